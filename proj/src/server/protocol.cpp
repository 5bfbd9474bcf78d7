#include <json.hpp>

#include "chipfire/chipfire.hpp"
#include "chipfire/server.hpp"

namespace chipfire::server {
namespace {

using nlohmann::json;

json chips_json(const Divisor& d) {
  json out = json::object();
  for (Index v = 0; v < d.graph().num_vertices(); ++v) out[d.graph().name(v)] = d[v];
  return out;
}

json script_json(const FiringScript& s) {
  json out = json::object();
  for (Index v = 0; v < s.graph().num_vertices(); ++v) out[s.graph().name(v)] = s.net()(v);
  return out;
}

json move_json(const Move& m) { return {{"kind", to_string(m.kind)}, {"vertices", m.vertices}}; }

json state_json(const Snapshot& s) {
  return {{"session_id", s.id},
          {"move_index", s.history.size()},
          {"chips", chips_json(s.current)},
          {"degree", degree(s.current)},
          {"won", is_effective(s.current)}};
}

Response reply(int status, const json& body) { return {status, body.dump(2) + "\n"}; }

Response error_reply(int status, const std::string& code, const std::string& message, const std::string& path) {
  return reply(status, {{"code", code}, {"message", message}, {"path", path}});
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::LoopCeiling: return 500;
    case ErrorCode::Cancelled: return 409;
    default: return 400;
  }
}

json parse_body(const std::string& body) {
  auto parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) throw ProtocolError(400, "SyntaxError", "request body is not JSON");
  return parsed;
}

Move parse_move(const json& body) {
  if (!body.is_object()) throw ProtocolError(400, "SyntaxError", "move must be an object");
  if (!body.contains("kind") || !body["kind"].is_string())
    throw ProtocolError(400, "SyntaxError", "missing move kind", "/kind");
  if (!body.contains("vertices") || !body["vertices"].is_array())
    throw ProtocolError(400, "SyntaxError", "missing vertex list", "/vertices");
  Move move;
  const auto kind = body["kind"].get<std::string>();
  if (kind == "lend") {
    move.kind = Move::Kind::Lend;
  } else if (kind == "borrow") {
    move.kind = Move::Kind::Borrow;
  } else if (kind == "set_fire") {
    move.kind = Move::Kind::SetFire;
  } else {
    throw ProtocolError(400, "SyntaxError", "unknown move kind '" + kind + "'", "/kind");
  }
  const auto& vertices = body["vertices"];
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (!vertices[i].is_string())
      throw ProtocolError(400, "SyntaxError", "vertex names are strings", "/vertices/" + std::to_string(i));
    move.vertices.push_back(vertices[i].get<std::string>());
  }
  if (move.kind != Move::Kind::SetFire && move.vertices.size() != 1)
    throw ProtocolError(400, "SyntaxError", kind + " takes exactly one vertex", "/vertices");
  return move;
}

void check_vertices(const Divisor& d, const Move& move) {
  for (std::size_t i = 0; i < move.vertices.size(); ++i)
    if (!d.graph().find(move.vertices[i]))
      throw ProtocolError(400, "UnknownVertex", "unknown vertex '" + move.vertices[i] + "'",
                          "/vertices/" + std::to_string(i));
}

std::string resolve_q(const Divisor& d, const std::map<std::string, std::string>& query) {
  const auto it = query.find("q");
  if (it == query.end() || it->second.empty()) return d.graph().name(0);
  if (!d.graph().find(it->second))
    throw ProtocolError(400, "UnknownVertex", "unknown vertex '" + it->second + "'", "q");
  return it->second;
}

json hint(const Divisor& d, const std::string& q) {
  if (is_effective(d)) return {{"kind", "none"}, {"vertices", json::array()}, {"rationale", "already won"}};
  const auto& g = d.graph();
  const Index qi = g.index_of(q);
  Index worst = -1;
  for (Index v = 0; v < g.num_vertices(); ++v)
    if (v != qi && d[v] < 0 && (worst < 0 || d[v] < d[worst])) worst = v;
  if (worst >= 0)
    return {{"kind", "borrow_at"},
            {"vertices", {g.name(worst)}},
            {"rationale", g.name(worst) + " is the most indebted vertex away from " + q}};
  const auto burn = dhar_burning(make_config(d, q));
  if (burn.firing_set.empty())
    return {{"kind", "none"},
            {"vertices", json::array()},
            {"rationale", "no legal firing avoids " + q + "; the position is " + q + "-reduced and unwinnable"}};
  return {{"kind", "dhar_set"},
          {"vertices", std::vector<std::string>(burn.firing_set.begin(), burn.firing_set.end())},
          {"rationale", "the burning algorithm from " + q + " stops short of these vertices"}};
}

json ewd_replay(const Divisor& d, const std::string& q) {
  const auto result = ewd(d, q, false);
  json steps = json::array();
  for (const auto& step : result.log) {
    steps.push_back({{"phase", step.phase == EwdStep::Phase::Concentrate ? "concentrate" : "dhar"},
                     {"iteration", step.iteration},
                     {"fired", std::vector<std::string>(step.fired.begin(), step.fired.end())},
                     {"times", step.times},
                     {"chips", chips_json(Divisor(d.graph_ptr(), step.chips))}});
  }
  return {{"q", q}, {"winnable", result.winnable}, {"steps", steps}};
}

void guard_rank(const SessionStore& store, const Divisor& d) {
  const long deg = degree(d);
  const long genus = d.graph().genus();
  if (deg < 0 || deg > 2 * genus - 2) return;
  const auto limit = store.options().rank_candidate_limit;
  // effective divisors of degree <= deg + 1
  if (stars_and_bars(deg + 1, d.graph().num_vertices() + 1, limit) > limit)
    throw ProtocolError(422, "TooLarge", "divisor too large for interactive rank analysis");
}

json analysis(SessionStore& store, const Snapshot& s, const std::map<std::string, std::string>& query) {
  const auto it = query.find("kind");
  const std::string kind = it == query.end() ? "state" : it->second;
  const auto& d = s.current;
  if (kind == "state") {
    json history = json::array();
    for (const auto& m : s.history) history.push_back(move_json(m));
    return {{"kind", kind}, {"initial", chips_json(s.initial)}, {"history", history}};
  }
  if (kind == "hint") return {{"kind", kind}, {"q", resolve_q(d, query)}, {"hint", hint(d, resolve_q(d, query))}};
  if (kind == "winnable") {
    const auto q = resolve_q(d, query);
    return {{"kind", kind}, {"q", q}, {"winnable", ewd(d, q, false).winnable}};
  }
  if (kind == "qreduce") {
    const auto q = resolve_q(d, query);
    const auto r = q_reduce(d, q);
    return {{"kind", kind}, {"q", q}, {"divisor", chips_json(r.divisor)}, {"script", script_json(r.script)}};
  }
  if (kind == "rank") {
    guard_rank(store, d);
    SessionStore::WorkerSlot slot(store);
    const auto r = rank(d, true, store.stop_token(s.id));
    return {{"kind", kind},
            {"rank", r.rank},
            {"witness", r.witness ? chips_json(*r.witness) : json(nullptr)},
            {"ewd_calls", r.ewd_calls}};
  }
  if (kind == "ewd_replay") {
    SessionStore::WorkerSlot slot(store);
    json out = ewd_replay(d, resolve_q(d, query));
    out["kind"] = kind;
    return out;
  }
  throw ProtocolError(400, "InvalidParameter", "unknown analysis kind '" + kind + "'", "kind");
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= path.size()) {
    const auto end = path.find('/', start);
    const auto part = path.substr(start, end == std::string::npos ? std::string::npos : end - start);
    if (!part.empty()) parts.push_back(part);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return parts;
}

}  // namespace

Response Service::handle(const Request& request) {
  try {
    store_.purge_expired();
    const auto parts = split_path(request.path);
    if (parts.size() < 2 || parts[0] != "api") throw ProtocolError(404, "NotFound", "no route " + request.path);
    if (parts.size() == 2 && parts[1] == "health") {
      if (request.method != "GET") throw ProtocolError(405, "MethodNotAllowed", "use GET");
      return reply(200, {{"status", "ok"}, {"sessions", store_.size()}});
    }
    if (parts[1] != "sessions") throw ProtocolError(404, "NotFound", "no route " + request.path);

    if (parts.size() == 2) {
      if (request.method != "POST") throw ProtocolError(405, "MethodNotAllowed", "use POST");
      const auto d = io::read_divisor(io::Format::Json, request.body);
      const auto id = store_.create(d);
      return reply(201, state_json(store_.snapshot(id)));
    }
    const auto& id = parts[2];
    if (parts.size() == 3) {
      if (request.method != "GET") throw ProtocolError(405, "MethodNotAllowed", "use GET");
      return reply(200, state_json(store_.snapshot(id)));
    }
    if (parts.size() == 4 && parts[3] == "moves") {
      if (request.method != "POST") throw ProtocolError(405, "MethodNotAllowed", "use POST");
      const auto move = parse_move(parse_body(request.body));
      check_vertices(store_.snapshot(id).current, move);
      return reply(200, state_json(store_.apply(id, move)));
    }
    if (parts.size() == 4 && parts[3] == "undo") {
      if (request.method != "POST") throw ProtocolError(405, "MethodNotAllowed", "use POST");
      return reply(200, state_json(store_.undo(id)));
    }
    if (parts.size() == 4 && parts[3] == "analysis") {
      if (request.method != "GET") throw ProtocolError(405, "MethodNotAllowed", "use GET");
      const auto snapshot = store_.snapshot(id);
      auto body = state_json(snapshot);
      body["analysis"] = analysis(store_, snapshot, request.query);
      return reply(200, body);
    }
    throw ProtocolError(404, "NotFound", "no route " + request.path);
  } catch (const ProtocolError& e) {
    return error_reply(e.status(), e.code(), e.what(), e.path());
  } catch (const Error& e) {
    return error_reply(status_for(e.code()), std::string(to_string(e.code())), e.what(), e.location());
  } catch (const std::exception& e) {
    return error_reply(500, "Internal", e.what(), "");
  }
}

}  // namespace chipfire::server
