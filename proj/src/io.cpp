#include "chipfire/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace chipfire::io {
namespace {

using nlohmann::json;

[[noreturn]] void syntax(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::SyntaxError, message, where);
}
[[noreturn]] void semantic(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::SemanticError, message, where);
}
[[noreturn]] void mismatch(const std::string& message, const std::string& where) {
  throw Error(ErrorCode::KindMismatch, message, where);
}

// Runs `build`, turning object-invariant failures into SemanticError at `where`.
template <typename F>
auto semantically(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SyntaxError || e.code() == ErrorCode::SemanticError ||
        e.code() == ErrorCode::KindMismatch) {
      throw;
    }
    semantic(std::string(chipfire::to_string(e.code())) + ": " + e.what(), where);
  }
}

struct SectionNames {
  const char* vertices;
  const char* edge;
  const char* separator;  // nullptr for a bare graph
  const char* record;
  const char* json_key;
};

SectionNames names_for(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::Graph: return {"VERTICES", "EDGE", nullptr, nullptr, nullptr};
    case ObjectKind::Divisor: return {"GRAPH_VERTICES", "GRAPH_EDGE", "---DEGREES---", "DEGREE", "degrees"};
    case ObjectKind::Orientation:
      return {"GRAPH_VERTICES", "GRAPH_EDGE", "---ORIENTATIONS---", "ORIENTED", "orientations"};
    case ObjectKind::FiringScript: return {"GRAPH_VERTICES", "GRAPH_EDGE", "---SCRIPT---", "FIRING", "script"};
  }
  return {};
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

long long parse_integer(std::string_view text, const std::string& where) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    syntax("expected an integer, found '" + std::string(text) + "'", where);
  }
  return value;
}

// ---------------------------------------------------------------- TXT

struct TxtLine {
  std::size_t number;
  bool separator;
  std::string keyword;  // separator text for separator lines
  std::vector<std::string> fields;
  std::string where() const { return "line " + std::to_string(number); }
};

std::vector<TxtLine> tokenize(std::string_view payload) {
  std::vector<TxtLine> lines;
  std::size_t number = 0;
  std::size_t start = 0;
  while (start <= payload.size()) {
    const auto nl = payload.find('\n', start);
    const auto raw = payload.substr(start, nl == std::string_view::npos ? payload.size() - start : nl - start);
    ++number;
    start = nl == std::string_view::npos ? payload.size() + 1 : nl + 1;
    const auto line = trim(raw);
    if (line.empty()) continue;
    TxtLine out{number, false, {}, {}};
    if (line.size() >= 6 && line.starts_with("---") && line.ends_with("---")) {
      out.separator = true;
      out.keyword = std::string(line);
      lines.push_back(std::move(out));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) syntax("expected 'KEYWORD: values'", out.where());
    out.keyword = std::string(trim(line.substr(0, colon)));
    const auto rest = trim(line.substr(colon + 1));
    if (!rest.empty()) {
      std::size_t pos = 0;
      while (true) {
        const auto comma = rest.find(',', pos);
        const auto field = trim(rest.substr(pos, comma == std::string_view::npos ? rest.size() - pos : comma - pos));
        if (field.empty()) syntax("empty field", out.where());
        out.fields.emplace_back(field);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
    lines.push_back(std::move(out));
  }
  return lines;
}

void expect_fields(const TxtLine& line, std::size_t count) {
  if (line.fields.size() != count) {
    syntax(line.keyword + " expects " + std::to_string(count) + " fields, found " +
               std::to_string(line.fields.size()),
           line.where());
  }
}

struct ParsedTxt {
  GraphPtr graph;
  std::vector<TxtLine> records;
};

ParsedTxt parse_txt(ObjectKind kind, std::string_view payload) {
  const auto names = names_for(kind);
  const auto other = names_for(kind == ObjectKind::Graph ? ObjectKind::Divisor : ObjectKind::Graph);
  const auto lines = tokenize(payload);
  if (lines.empty()) syntax(std::string("missing ") + names.vertices + " line", "line 1");

  const auto& head = lines.front();
  if (head.keyword == other.vertices) {
    mismatch("found " + head.keyword + ", expected " + names.vertices, head.where());
  }
  if (head.separator || head.keyword != names.vertices) {
    syntax(std::string("expected ") + names.vertices + ", found '" + head.keyword + "'", head.where());
  }
  std::vector<std::string> vertices = head.fields;
  std::set<std::string> declared;
  for (const auto& v : vertices) {
    semantically(head.where(), [&] {
      validate_vertex_name(v);
      return 0;
    });
    if (!declared.insert(v).second) semantic("vertex '" + v + "' listed twice", head.where());
  }

  std::vector<EdgeSpec> edges;
  std::size_t i = 1;
  for (; i < lines.size() && !lines[i].separator; ++i) {
    const auto& line = lines[i];
    if (line.keyword != names.edge) {
      if (names.separator) {
        syntax(std::string("expected ") + names.edge + " or " + names.separator + ", found '" + line.keyword + "'",
               line.where());
      }
      syntax(std::string("expected ") + names.edge + ", found '" + line.keyword + "'", line.where());
    }
    expect_fields(line, 3);
    const auto m = parse_integer(line.fields[2], line.where());
    if (!declared.count(line.fields[0]) || !declared.count(line.fields[1])) {
      semantic("edge endpoint is not a declared vertex", line.where());
    }
    if (line.fields[0] == line.fields[1]) semantic("loop edge at '" + line.fields[0] + "'", line.where());
    if (m <= 0) semantic("multiplicity must be positive", line.where());
    edges.push_back({line.fields[0], line.fields[1], static_cast<int>(m)});
  }
  GraphPtr graph = semantically(head.where(), [&] { return build_graph(vertices, edges); });

  ParsedTxt out{std::move(graph), {}};
  if (!names.separator) {
    if (i < lines.size()) mismatch("unexpected separator " + lines[i].keyword + " in a graph", lines[i].where());
    return out;
  }
  if (i == lines.size()) {
    syntax(std::string("missing ") + names.separator + " separator",
           "line " + std::to_string(lines.back().number + 1));
  }
  if (lines[i].keyword != names.separator) {
    for (auto k : {ObjectKind::Divisor, ObjectKind::Orientation, ObjectKind::FiringScript}) {
      if (lines[i].keyword == names_for(k).separator) {
        mismatch("found " + lines[i].keyword + ", expected " + names.separator, lines[i].where());
      }
    }
    syntax("unknown separator " + lines[i].keyword, lines[i].where());
  }
  for (++i; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.separator || line.keyword != names.record) {
      syntax(std::string("expected ") + names.record + ", found '" + line.keyword + "'", line.where());
    }
    expect_fields(line, 2);
    out.records.push_back(line);
  }
  return out;
}

Assignments txt_assignments(const ParsedTxt& parsed) {
  Assignments values;
  std::set<std::string> seen;
  for (const auto& line : parsed.records) {
    const auto value = parse_integer(line.fields[1], line.where());
    if (!parsed.graph->find(line.fields[0])) semantic("unknown vertex '" + line.fields[0] + "'", line.where());
    if (!seen.insert(line.fields[0]).second) semantic("vertex '" + line.fields[0] + "' assigned twice", line.where());
    values.emplace_back(line.fields[0], value);
  }
  return values;
}

Object read_txt(ObjectKind kind, std::string_view payload) {
  auto parsed = parse_txt(kind, payload);
  switch (kind) {
    case ObjectKind::Graph: return parsed.graph;
    case ObjectKind::Divisor: return make_divisor(parsed.graph, txt_assignments(parsed));
    case ObjectKind::FiringScript: return make_script(parsed.graph, txt_assignments(parsed));
    case ObjectKind::Orientation: {
      Orientation o(parsed.graph);
      std::set<Index> listed;
      for (const auto& line : parsed.records) {
        semantically(line.where(), [&] {
          const Index u = parsed.graph->index_of(line.fields[0]);
          const Index v = parsed.graph->index_of(line.fields[1]);
          const Index e = u == v ? -1 : parsed.graph->edge_index(u, v);
          if (e < 0) throw Error(ErrorCode::NotAnEdge, line.fields[0] + " -> " + line.fields[1] + " is not an edge");
          if (!listed.insert(e).second) throw Error(ErrorCode::ConflictingArc, "pair listed twice");
          o.orient(u, v);
          return 0;
        });
      }
      return o;
    }
  }
  return parsed.graph;
}

// ---------------------------------------------------------------- JSON

std::string child(const std::string& path, std::string_view key) { return path + "/" + std::string(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& member(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) syntax(std::string("missing key \"") + key + "\"", path);
  return *it;
}

long long json_integer(const json& value, const std::string& path) {
  if (value.is_number_integer()) return value.get<long long>();
  if (value.is_number_float()) {
    const double d = value.get<double>();
    if (std::floor(d) != d) semantic("expected an integer, found a fractional number", path);
    return static_cast<long long>(d);
  }
  syntax("expected an integer", path);
}

const std::string& json_string(const json& value, const std::string& path) {
  if (!value.is_string()) syntax("expected a string", path);
  return value.get_ref<const std::string&>();
}

GraphPtr json_graph(const json& obj, const std::string& path) {
  if (!obj.is_object()) syntax("expected an object", path);
  const auto vpath = child(path, "vertices");
  const auto& vs = member(obj, "vertices", path);
  if (!vs.is_array()) syntax("expected an array", vpath);
  std::vector<std::string> vertices;
  std::set<std::string> declared;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& name = json_string(vs[i], child(vpath, i));
    semantically(child(vpath, i), [&] {
      validate_vertex_name(name);
      return 0;
    });
    if (!declared.insert(name).second) semantic("vertex '" + name + "' listed twice", child(vpath, i));
    vertices.push_back(name);
  }
  const auto epath = child(path, "edges");
  const auto& es = member(obj, "edges", path);
  if (!es.is_array()) syntax("expected an array", epath);
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto p = child(epath, i);
    if (!es[i].is_array() || es[i].size() != 3) syntax("expected [source, target, multiplicity]", p);
    const auto& u = json_string(es[i][0], child(p, 0));
    const auto& v = json_string(es[i][1], child(p, 1));
    const auto m = json_integer(es[i][2], child(p, 2));
    if (!declared.count(u)) semantic("unknown vertex '" + u + "'", child(p, 0));
    if (!declared.count(v)) semantic("unknown vertex '" + v + "'", child(p, 1));
    if (u == v) semantic("loop edge at '" + u + "'", p);
    if (m <= 0) semantic("multiplicity must be positive", child(p, 2));
    edges.push_back({u, v, static_cast<int>(m)});
  }
  return semantically(path.empty() ? "/" : path, [&] { return build_graph(vertices, edges); });
}

Assignments json_assignments(const json& map, const GraphPtr& graph, const std::string& path) {
  if (!map.is_object()) syntax("expected an object", path);
  Assignments values;
  for (auto it = map.begin(); it != map.end(); ++it) {
    const auto p = child(path, it.key());
    if (!graph->find(it.key())) semantic("unknown vertex '" + it.key() + "'", p);
    values.emplace_back(it.key(), json_integer(it.value(), p));
  }
  return values;
}

Object read_json(ObjectKind kind, std::string_view payload) {
  json doc;
  try {
    doc = json::parse(payload);
  } catch (const json::parse_error& e) {
    syntax(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) syntax("expected a JSON object", "/");
  if (kind == ObjectKind::Graph) {
    if (doc.contains("graph")) mismatch("found a wrapped object, expected a bare graph", "/graph");
    return json_graph(doc, "");
  }
  const auto names = names_for(kind);
  if (!doc.contains(names.json_key)) {
    for (auto k : {ObjectKind::Divisor, ObjectKind::Orientation, ObjectKind::FiringScript}) {
      if (doc.contains(names_for(k).json_key)) {
        mismatch(std::string("found \"") + names_for(k).json_key + "\", expected \"" + names.json_key + "\"",
                 std::string("/") + names_for(k).json_key);
      }
    }
    if (doc.contains("vertices")) mismatch("found a bare graph", "/vertices");
  }
  GraphPtr graph = json_graph(member(doc, "graph", ""), "/graph");
  const auto& body = member(doc, names.json_key, "");
  const std::string path = std::string("/") + names.json_key;
  switch (kind) {
    case ObjectKind::Divisor: return make_divisor(graph, json_assignments(body, graph, path));
    case ObjectKind::FiringScript: return make_script(graph, json_assignments(body, graph, path));
    case ObjectKind::Orientation: {
      if (!body.is_array()) syntax("expected an array", path);
      Orientation o(graph);
      std::set<Index> listed;
      for (std::size_t i = 0; i < body.size(); ++i) {
        const auto p = child(path, i);
        if (!body[i].is_array() || body[i].size() != 2) syntax("expected [source, sink]", p);
        const auto& s = json_string(body[i][0], child(p, 0));
        const auto& t = json_string(body[i][1], child(p, 1));
        semantically(p, [&] {
          const Index u = graph->index_of(s);
          const Index v = graph->index_of(t);
          const Index e = u == v ? -1 : graph->edge_index(u, v);
          if (e < 0) throw Error(ErrorCode::NotAnEdge, s + " -> " + t + " is not an edge");
          if (!listed.insert(e).second) throw Error(ErrorCode::ConflictingArc, "pair listed twice");
          o.orient(u, v);
          return 0;
        });
      }
      return o;
    }
    case ObjectKind::Graph: break;
  }
  return graph;
}

// ---------------------------------------------------------------- writers

std::string quoted(const std::string& s) { return json(s).dump(); }

std::string join_names(const Multigraph& g, bool quote) {
  std::string out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    if (v > 0) out += ", ";
    out += quote ? quoted(g.name(v)) : g.name(v);
  }
  return out;
}

std::string txt_graph(const Multigraph& g, const char* vertices_kw, const char* edge_kw) {
  std::string out = std::string(vertices_kw) + ": " + join_names(g, false) + "\n";
  for (const auto& e : g.edges()) {
    out += std::string(edge_kw) + ": " + g.name(e.u) + ", " + g.name(e.v) + ", " + std::to_string(e.multiplicity) + "\n";
  }
  return out;
}

std::string json_edge(const Multigraph& g, const Multigraph::Edge& e) {
  return "[" + quoted(g.name(e.u)) + ", " + quoted(g.name(e.v)) + ", " + std::to_string(e.multiplicity) + "]";
}

std::string json_graph_text(const Multigraph& g, bool nested) {
  const std::string pad = nested ? "        " : "    ";
  std::string out = pad + "\"vertices\": [" + join_names(g, true) + "],\n" + pad + "\"edges\": [";
  if (nested) {
    for (std::size_t i = 0; i < g.edges().size(); ++i) out += (i ? ", " : "") + json_edge(g, g.edges()[i]);
    out += "]\n";
  } else if (g.edges().empty()) {
    out += "]\n";
  } else {
    out += "\n";
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      out += pad + "    " + json_edge(g, g.edges()[i]) + (i + 1 < g.edges().size() ? ",\n" : "\n");
    }
    out += pad + "]\n";
  }
  return out;
}

std::string json_wrapped(const Multigraph& g, const char* key, const std::string& body) {
  return "{\n    \"graph\": {\n" + json_graph_text(g, true) + "    },\n    \"" + key + "\": " + body + "\n}\n";
}

std::string json_value_map(const Multigraph& g, const ChipVector& values) {
  if (g.num_vertices() == 0) return "{}";
  std::string out = "{\n";
  for (Index v = 0; v < g.num_vertices(); ++v) {
    out += "        " + quoted(g.name(v)) + ": " + std::to_string(values(v)) +
           (v + 1 < g.num_vertices() ? ",\n" : "\n");
  }
  return out + "    }";
}

std::string txt_value_lines(const Multigraph& g, const char* keyword, const ChipVector& values) {
  std::string out;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    out += std::string(keyword) + ": " + g.name(v) + ", " + std::to_string(values(v)) + "\n";
  }
  return out;
}

std::string fixed(double x) {
  if (std::fabs(x) < 5e-4) x = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string tex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '_': case '&': case '%': case '$': case '#': case '{': case '}':
        out += '\\';
        out += c;
        break;
      case '\\': out += "\\textbackslash{}"; break;
      case '^': out += "\\^{}"; break;
      case '~': out += "\\~{}"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tikz(const Multigraph& g, const ChipVector* chips) {
  constexpr double kPi = 3.14159265358979323846;
  constexpr double kRadius = 3.0;
  const Index n = g.num_vertices();
  std::string out = "\\begin{tikzpicture}\n";
  for (Index v = 0; v < n; ++v) {
    const double angle = kPi / 2 - 2 * kPi * static_cast<double>(v) / static_cast<double>(n);
    const double x = n == 1 ? 0.0 : kRadius * std::cos(angle);
    const double y = n == 1 ? 0.0 : kRadius * std::sin(angle);
    out += "  \\node[circle,draw";
    if (chips) out += ",label=above:{" + std::to_string((*chips)(v)) + "}";
    out += "] (v" + std::to_string(v) + ") at (" + fixed(x) + "," + fixed(y) + ") {" + tex_escape(g.name(v)) + "};\n";
  }
  for (const auto& e : g.edges()) {
    const std::string ends = "(v" + std::to_string(e.u) + ") ";
    const std::string target = "(v" + std::to_string(e.v) + ");\n";
    for (int k = 0; k < e.multiplicity; ++k) {
      const int bend = (2 * k - (e.multiplicity - 1)) * 12;
      if (bend == 0) out += "  \\draw " + ends + "-- " + target;
      else if (bend > 0) out += "  \\draw " + ends + "to[bend left=" + std::to_string(bend) + "] " + target;
      else out += "  \\draw " + ends + "to[bend right=" + std::to_string(-bend) + "] " + target;
    }
  }
  return out + "\\end{tikzpicture}\n";
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "json") return Format::Json;
  if (text == "txt") return Format::Txt;
  throw Error(ErrorCode::InvalidParameter, "unknown format '" + std::string(text) + "'");
}

ObjectKind parse_kind(std::string_view text) {
  if (text == "graph") return ObjectKind::Graph;
  if (text == "divisor") return ObjectKind::Divisor;
  if (text == "orientation") return ObjectKind::Orientation;
  if (text == "firing_script" || text == "script") return ObjectKind::FiringScript;
  throw Error(ErrorCode::InvalidParameter, "unknown object kind '" + std::string(text) + "'");
}

std::string_view to_string(Format f) { return f == Format::Json ? "json" : "txt"; }

std::string_view to_string(ObjectKind k) {
  switch (k) {
    case ObjectKind::Graph: return "graph";
    case ObjectKind::Divisor: return "divisor";
    case ObjectKind::Orientation: return "orientation";
    case ObjectKind::FiringScript: return "firing_script";
  }
  return "unknown";
}

Format format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return Format::Json;
  if (ext == ".txt") return Format::Txt;
  throw Error(ErrorCode::InvalidParameter, "cannot infer a format from '" + path.string() + "'");
}

ObjectKind kind_of(const Object& object) { return static_cast<ObjectKind>(object.index()); }

Object read(Format format, ObjectKind kind, std::string_view payload) {
  return format == Format::Json ? read_json(kind, payload) : read_txt(kind, payload);
}

GraphPtr read_graph(Format format, std::string_view payload) {
  return std::get<GraphPtr>(read(format, ObjectKind::Graph, payload));
}
Divisor read_divisor(Format format, std::string_view payload) {
  return std::get<Divisor>(read(format, ObjectKind::Divisor, payload));
}
Orientation read_orientation(Format format, std::string_view payload) {
  return std::get<Orientation>(read(format, ObjectKind::Orientation, payload));
}
FiringScript read_script(Format format, std::string_view payload) {
  return std::get<FiringScript>(read(format, ObjectKind::FiringScript, payload));
}

std::string write(Format format, const Object& object) {
  const bool as_json = format == Format::Json;
  return std::visit(
      [&](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, GraphPtr>) {
          return as_json ? "{\n" + json_graph_text(*x, false) + "}\n" : txt_graph(*x, "VERTICES", "EDGE");
        } else if constexpr (std::is_same_v<T, Divisor>) {
          return as_json ? json_wrapped(x.graph(), "degrees", json_value_map(x.graph(), x.chips()))
                         : txt_graph(x.graph(), "GRAPH_VERTICES", "GRAPH_EDGE") + "---DEGREES---\n" +
                               txt_value_lines(x.graph(), "DEGREE", x.chips());
        } else if constexpr (std::is_same_v<T, FiringScript>) {
          return as_json ? json_wrapped(x.graph(), "script", json_value_map(x.graph(), x.net()))
                         : txt_graph(x.graph(), "GRAPH_VERTICES", "GRAPH_EDGE") + "---SCRIPT---\n" +
                               txt_value_lines(x.graph(), "FIRING", x.net());
        } else {
          const auto arcs = x.arcs();
          if (as_json) {
            std::string body = "[";
            if (!arcs.empty()) {
              body += "\n";
              for (std::size_t i = 0; i < arcs.size(); ++i) {
                body += "        [" + quoted(arcs[i].first) + ", " + quoted(arcs[i].second) + "]" +
                        (i + 1 < arcs.size() ? ",\n" : "\n");
              }
              body += "    ";
            }
            return json_wrapped(x.graph(), "orientations", body + "]");
          }
          std::string out = txt_graph(x.graph(), "GRAPH_VERTICES", "GRAPH_EDGE") + "---ORIENTATIONS---\n";
          for (const auto& [s, t] : arcs) out += "ORIENTED: " + s + ", " + t + "\n";
          return out;
        }
      },
      object);
}

std::string to_tikz(const Multigraph& graph) { return tikz(graph, nullptr); }
std::string to_tikz(const Divisor& divisor) { return tikz(divisor.graph(), &divisor.chips()); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidParameter, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidParameter, "cannot write '" + path.string() + "'");
  out << contents;
}

}  // namespace chipfire::io
