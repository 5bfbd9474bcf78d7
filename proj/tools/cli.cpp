#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include "chipfire/chipfire.hpp"
#include "chipfire/server.hpp"

namespace chipfire::cli {
namespace {

using nlohmann::ordered_json;

struct Inputs {
  std::string graph_path;
  std::string divisor_path;
  std::string other_path;
  std::string family;
  std::string q;
  std::string output_path;
  std::string output_mode = "text";
  std::string format;  // overrides the extension of output_path or stdout
  bool optimized = false;
  std::optional<long> max_degree;
  unsigned parallel = 0;
  // convert
  std::string kind = "divisor";
  std::string from;
  std::string to;
  std::string in_file;
  std::string out_file;
  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_path;
  double ttl_hours = 24;
};

io::Format format_of(const std::string& path, const std::string& override_name) {
  return override_name.empty() ? io::format_from_path(path) : io::parse_format(override_name);
}

Divisor load_divisor(const Inputs& in, const std::string& path) {
  auto d = io::read_divisor(io::format_from_path(path), io::read_file(path));
  if (!in.graph_path.empty()) {
    const auto g = io::read_graph(io::format_from_path(in.graph_path), io::read_file(in.graph_path));
    if (!(*g == d.graph()))
      throw Error(ErrorCode::GraphMismatch, "divisor file and graph file describe different graphs");
  }
  return d;
}

GraphPtr load_graph(const Inputs& in) {
  if (!in.family.empty()) return generate_family(in.family);
  if (in.graph_path.empty()) throw Error(ErrorCode::InvalidParameter, "give a graph file or --family");
  return io::read_graph(io::format_from_path(in.graph_path), io::read_file(in.graph_path));
}

std::string q_or_default(const Divisor& d, const std::string& q) {
  if (q.empty()) return d.graph().name(0);
  d.graph().index_of(q);  // validates
  return q;
}

ordered_json chips_json(const Divisor& d) {
  ordered_json out = ordered_json::object();
  for (Index v = 0; v < d.graph().num_vertices(); ++v) out[d.graph().name(v)] = d[v];
  return out;
}

std::string script_text(const FiringScript& s) { return to_string(Divisor(s.graph_ptr(), s.net())); }

ordered_json script_json(const FiringScript& s) { return chips_json(Divisor(s.graph_ptr(), s.net())); }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) out += (out.empty() ? "" : ", ") + item;
  return out;
}

void emit_object(const Inputs& in, const io::Object& object) {
  if (in.output_path.empty()) return;
  io::write_file(in.output_path, io::write(format_of(in.output_path, in.format), object));
}

int winnable(const Inputs& in, std::ostream& out) {
  const auto d = load_divisor(in, in.divisor_path);
  const auto q = q_or_default(d, in.q);
  const bool won = ewd(d, q, in.optimized).winnable;
  if (in.output_mode == "json")
    out << ordered_json{{"winnable", won}, {"q", q}}.dump(4) << '\n';
  else
    out << (won ? "WINNABLE" : "UNWINNABLE") << '\n';
  return kExitOk;
}

int qreduce(const Inputs& in, std::ostream& out) {
  const auto d = load_divisor(in, in.divisor_path);
  const auto q = q_or_default(d, in.q);
  const auto r = q_reduce(d, q);
  if (in.output_mode == "json") {
    out << ordered_json{{"q", q}, {"divisor", chips_json(r.divisor)}, {"script", script_json(r.script)}}.dump(4)
        << '\n';
  } else {
    out << "q: " << q << '\n' << "divisor: " << to_string(r.divisor) << '\n' << "script: " << script_text(r.script) << '\n';
  }
  emit_object(in, r.divisor);
  return kExitOk;
}

int rank_command(const Inputs& in, std::ostream& out) {
  const auto d = load_divisor(in, in.divisor_path);
  const auto r = rank(d, in.optimized);
  if (in.output_mode == "json") {
    out << ordered_json{{"rank", r.rank},
                        {"witness", r.witness ? chips_json(*r.witness) : ordered_json(nullptr)},
                        {"ewd_calls", r.ewd_calls}}
               .dump(4)
        << '\n';
  } else {
    out << "rank: " << r.rank << '\n';
    if (r.witness) out << "witness: " << to_string(*r.witness) << '\n';
  }
  return kExitOk;
}

int gonality_command(const Inputs& in, std::ostream& out) {
  const auto g = load_graph(in);
  GonalityOptions options;
  options.max_degree = in.max_degree;
  options.parallelism = in.parallel;
  const auto result = gonality(g, options);
  if (in.output_mode == "json") {
    ordered_json strategies = ordered_json::array();
    for (const auto& d : result.winning_strategies) strategies.push_back(chips_json(d));
    out << ordered_json{{"gonality", result.gonality},
                        {"searched_degrees", result.searched_degrees},
                        {"winning_strategies", strategies}}
               .dump(4)
        << '\n';
  } else {
    out << "gonality: " << result.gonality << '\n';
    out << "winning strategies: " << result.winning_strategies.size() << '\n';
    for (const auto& d : result.winning_strategies) out << "  " << to_string(d) << '\n';
  }
  return kExitOk;
}

int equiv(const Inputs& in, std::ostream& out) {
  const auto a = load_divisor(in, in.divisor_path);
  const auto b = load_divisor(in, in.other_path);
  const bool same = linear_equivalence(a, b);
  if (in.output_mode == "json")
    out << ordered_json{{"equivalent", same}}.dump(4) << '\n';
  else
    out << (same ? "EQUIVALENT" : "NOT EQUIVALENT") << '\n';
  return kExitOk;
}

int dhar(const Inputs& in, std::ostream& out) {
  const auto d = load_divisor(in, in.divisor_path);
  const auto q = q_or_default(d, in.q);
  const auto result = dhar_burning(make_config(d, q));
  const std::vector<std::string> fired(result.firing_set.begin(), result.firing_set.end());
  std::vector<std::string> arcs;
  for (const auto& [from, to] : result.orientation.arcs()) arcs.push_back(from + " -> " + to);
  if (in.output_mode == "json") {
    ordered_json pairs = ordered_json::array();
    for (const auto& [from, to] : result.orientation.arcs()) pairs.push_back({from, to});
    out << ordered_json{{"q", q},
                        {"firing_set", fired},
                        {"superstable", fired.empty()},
                        {"burn_order", result.burn_order},
                        {"orientation", pairs}}
               .dump(4)
        << '\n';
  } else {
    out << "q: " << q << '\n';
    out << "firing set: " << (fired.empty() ? "(empty)" : join(fired)) << '\n';
    out << "burn order: " << join(result.burn_order) << '\n';
    out << "orientation: " << (arcs.empty() ? "(none)" : join(arcs)) << '\n';
  }
  emit_object(in, result.orientation);
  return kExitOk;
}

int laplacian_command(const Inputs& in, std::ostream& out) {
  const auto g = load_graph(in);
  const auto lap = laplacian<Chip>(*g);
  if (in.output_mode == "json") {
    ordered_json rows = ordered_json::array();
    for (Index i = 0; i < lap.rows(); ++i) {
      std::vector<Chip> row(lap.row(i).begin(), lap.row(i).end());
      rows.push_back(row);
    }
    out << ordered_json{{"vertices", g->names()}, {"laplacian", rows}}.dump(4) << '\n';
  } else {
    out << "vertices: " << join(g->names()) << '\n';
    for (Index i = 0; i < lap.rows(); ++i) {
      for (Index j = 0; j < lap.cols(); ++j) out << (j ? " " : "") << lap(i, j);
      out << '\n';
    }
  }
  return kExitOk;
}

int generate(const Inputs& in, std::ostream& out) {
  const auto g = generate_family(in.family);
  if (in.output_path.empty()) {
    out << io::write(in.format.empty() ? io::Format::Txt : io::parse_format(in.format), g);
  } else {
    emit_object(in, g);
  }
  return kExitOk;
}

int convert(const Inputs& in, std::ostream& out) {
  const auto kind = io::parse_kind(in.kind);
  const auto from = in.from.empty() ? io::format_from_path(in.in_file) : io::parse_format(in.from);
  const auto object = io::read(from, kind, io::read_file(in.in_file));
  const auto to = !in.to.empty() ? io::parse_format(in.to)
                  : !in.out_file.empty() ? io::format_from_path(in.out_file)
                                         : throw Error(ErrorCode::InvalidParameter, "give --to or an output file");
  const auto text = io::write(to, object);
  if (in.out_file.empty())
    out << text;
  else
    io::write_file(in.out_file, text);
  return kExitOk;
}

int serve(const Inputs& in, std::ostream& out) {
  server::StoreOptions options;
  options.ttl = std::chrono::seconds(static_cast<long>(in.ttl_hours * 3600));
  if (!in.log_path.empty()) options.log_path = in.log_path;
  server::SessionStore store(options);
  server::Service service(store);
  server::HttpServer http(service);
  out << "listening on http://" << in.host << ':' << in.port << '\n' << std::flush;
  if (!http.listen(in.host, in.port)) throw Error(ErrorCode::InvalidParameter, "cannot bind " + in.host);
  return kExitOk;
}

bool is_input_error(ErrorCode code) {
  return code != ErrorCode::LoopCeiling && code != ErrorCode::Cancelled;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chip-firing and divisor theory on multigraphs", "chipfire"};
  app.require_subcommand(1);
  Inputs in;

  const auto output_flag = [&](CLI::App* cmd) {
    cmd->add_option("--output", in.output_mode, "text or json")->check(CLI::IsMember({"text", "json"}));
  };
  const auto divisor_flags = [&](CLI::App* cmd) {
    cmd->add_option("-d,--divisor", in.divisor_path, "divisor file (.json or .txt)")->required();
    cmd->add_option("-g,--graph", in.graph_path, "graph file; must match the divisor's graph");
    output_flag(cmd);
  };
  const auto graph_flags = [&](CLI::App* cmd) {
    cmd->add_option("-g,--graph", in.graph_path, "graph file");
    cmd->add_option("--family", in.family, "tetrahedron, cube, octahedron, dodecahedron, icosahedron, complete:N, chain:m1,m2,...");
    output_flag(cmd);
  };

  std::function<int(std::ostream&)> action;
  const auto bind = [&](CLI::App* cmd, int (*fn)(const Inputs&, std::ostream&)) {
    cmd->callback([&, fn] { action = [&, fn](std::ostream& o) { return fn(in, o); }; });
  };

  auto* win = app.add_subcommand("winnable", "decide whether the dollar game is winnable");
  divisor_flags(win);
  win->add_option("-q,--q", in.q, "vertex to reduce at (default: least name)");
  win->add_flag("--optimized", in.optimized, "answer from the degree alone when it decides");
  bind(win, winnable);

  auto* red = app.add_subcommand("qreduce", "compute the q-reduced divisor and its script");
  divisor_flags(red);
  red->add_option("-q,--q", in.q, "vertex to reduce at (default: least name)");
  red->add_option("-o,--out", in.output_path, "also write the reduced divisor here");
  red->add_option("--format", in.format, "format of --out (default: from extension)");
  bind(red, qreduce);

  auto* rk = app.add_subcommand("rank", "Baker-Norine rank");
  divisor_flags(rk);
  rk->add_flag("--optimized", in.optimized, "use the degree shortcuts");
  bind(rk, rank_command);

  auto* gon = app.add_subcommand("gonality", "minimal degree of a positive-rank divisor");
  graph_flags(gon);
  gon->add_option("--max-degree", in.max_degree, "lower search ceiling");
  gon->add_option("--parallel", in.parallel, "worker threads (0: all cores)");
  bind(gon, gonality_command);

  auto* eq = app.add_subcommand("equiv", "test linear equivalence of two divisors");
  divisor_flags(eq);
  eq->add_option("-e,--other", in.other_path, "second divisor file")->required();
  bind(eq, equiv);

  auto* dh = app.add_subcommand("dhar", "run the burning algorithm");
  divisor_flags(dh);
  dh->add_option("-q,--q", in.q, "burning source (default: least name)");
  dh->add_option("-o,--out", in.output_path, "also write the burn orientation here");
  dh->add_option("--format", in.format, "format of --out (default: from extension)");
  bind(dh, dhar);

  auto* lap = app.add_subcommand("laplacian", "print the Laplacian matrix");
  graph_flags(lap);
  bind(lap, laplacian_command);

  auto* gen = app.add_subcommand("generate", "write a graph family");
  gen->add_option("--family", in.family, "family name")->required();
  gen->add_option("-o,--out", in.output_path, "output file (default: stdout)");
  gen->add_option("--format", in.format, "json or txt");
  bind(gen, generate);

  auto* conv = app.add_subcommand("convert", "convert between the JSON and TXT formats");
  conv->add_option("--kind", in.kind, "graph, divisor, orientation or firing_script");
  conv->add_option("--from", in.from, "input format (default: from extension)");
  conv->add_option("--to", in.to, "output format (default: from extension)");
  conv->add_option("input", in.in_file, "input file")->required();
  conv->add_option("output", in.out_file, "output file (default: stdout)");
  bind(conv, convert);

  auto* srv = app.add_subcommand("serve", "run the game server");
  srv->add_option("--host", in.host, "bind address");
  srv->add_option("--port", in.port, "port");
  srv->add_option("--log", in.log_path, "append-only session log, replayed at start");
  srv->add_option("--ttl-hours", in.ttl_hours, "idle session lifetime");
  bind(srv, serve);

  std::vector<const char*> argv{"chipfire"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    return action(out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what();
    if (!e.location().empty()) err << " (at " << e.location() << ")";
    err << '\n';
    return is_input_error(e.code()) ? kExitInput : kExitInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace chipfire::cli
