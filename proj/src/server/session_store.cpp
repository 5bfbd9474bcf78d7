#include <fstream>
#include <mutex>
#include <random>

#include <json.hpp>

#include "chipfire/io.hpp"
#include "chipfire/server.hpp"

namespace chipfire::server {

using nlohmann::json;

struct SessionStore::Session {
  std::string id;
  Divisor initial;
  std::vector<std::pair<Move, Divisor>> history;  // move and the state it produced
  Clock::time_point touched;
  std::stop_source stop;
  std::shared_mutex mutex;

  Session(std::string id_, Divisor d, Clock::time_point now)
      : id(std::move(id_)), initial(std::move(d)), touched(now) {}

  const Divisor& current() const { return history.empty() ? initial : history.back().second; }

  Snapshot snapshot() const {
    Snapshot s{id, initial, current(), {}};
    s.history.reserve(history.size());
    for (const auto& [move, _] : history) s.history.push_back(move);
    return s;
  }
};

namespace {

Move::Kind kind_from(const std::string& text) {
  if (text == "lend") return Move::Kind::Lend;
  if (text == "borrow") return Move::Kind::Borrow;
  return Move::Kind::SetFire;
}

}  // namespace

SessionStore::SessionStore(StoreOptions options)
    : options_(std::move(options)), workers_(std::max(1u, options_.analysis_workers)) {
  if (options_.log_path) replay_log();
}

SessionStore::~SessionStore() {
  std::unique_lock lock(mutex_);
  for (auto& [_, session] : sessions_) session->stop.request_stop();
}

std::string SessionStore::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id(16, '0');
  auto bits = rng();
  for (auto& c : id) {
    c = kHex[bits & 15];
    bits >>= 4;
  }
  return id;
}

std::string SessionStore::create(const Divisor& initial) {
  auto now = options_.now();
  std::shared_ptr<Session> session;
  {
    std::unique_lock lock(mutex_);
    std::string id;
    do id = fresh_id();
    while (sessions_.count(id));
    session = std::make_shared<Session>(id, initial, now);
    sessions_.emplace(id, session);
  }
  append_log(json{{"op", "create"},
                  {"id", session->id},
                  {"divisor", json::parse(io::write(io::Format::Json, initial))}}
                 .dump());
  return session->id;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end() || options_.now() - it->second->touched > options_.ttl)
    throw ProtocolError(404, "UnknownSession", "no session '" + id + "'");
  return it->second;
}

Snapshot SessionStore::snapshot(const std::string& id) {
  auto session = find(id);
  std::shared_lock lock(session->mutex);
  return session->snapshot();
}

Snapshot SessionStore::apply(const std::string& id, const Move& move) {
  auto session = find(id);
  std::unique_lock lock(session->mutex);
  auto next = apply_move(session->current(), move);
  session->history.emplace_back(move, std::move(next));
  session->touched = options_.now();
  append_log(json{{"op", "move"}, {"id", id}, {"kind", to_string(move.kind)}, {"vertices", move.vertices}}.dump());
  return session->snapshot();
}

Snapshot SessionStore::undo(const std::string& id) {
  auto session = find(id);
  std::unique_lock lock(session->mutex);
  if (session->history.empty()) throw ProtocolError(409, "NothingToUndo", "no move to undo");
  session->history.pop_back();
  session->touched = options_.now();
  append_log(json{{"op", "undo"}, {"id", id}}.dump());
  return session->snapshot();
}

std::stop_token SessionStore::stop_token(const std::string& id) { return find(id)->stop.get_token(); }

std::size_t SessionStore::purge_expired() {
  const auto now = options_.now();
  std::unique_lock lock(mutex_);
  return std::erase_if(sessions_, [&](auto& entry) {
    if (now - entry.second->touched <= options_.ttl) return false;
    entry.second->stop.request_stop();
    return true;
  });
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

void SessionStore::append_log(const std::string& line) {
  if (!options_.log_path) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(*options_.log_path, std::ios::app);
  out << line << '\n';
}

void SessionStore::replay_log() {
  std::ifstream in(*options_.log_path);
  if (!in) return;
  const auto now = options_.now();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.contains("op") || !record.contains("id")) continue;
    const auto op = record["op"].get<std::string>();
    const auto id = record["id"].get<std::string>();
    if (op == "create") {
      auto d = io::read_divisor(io::Format::Json, record["divisor"].dump());
      sessions_[id] = std::make_shared<Session>(id, std::move(d), now);
      continue;
    }
    auto it = sessions_.find(id);
    if (it == sessions_.end()) continue;
    auto& session = *it->second;
    if (op == "move") {
      Move move{kind_from(record["kind"].get<std::string>()), record["vertices"].get<std::vector<std::string>>()};
      auto next = apply_move(session.current(), move);
      session.history.emplace_back(std::move(move), std::move(next));
    } else if (op == "undo" && !session.history.empty()) {
      session.history.pop_back();
    }
  }
}

SessionStore::WorkerSlot::WorkerSlot(SessionStore& store) : store_(store) {
  if (!store_.workers_.try_acquire_for(store_.options_.worker_wait))
    throw ProtocolError(503, "Busy", "all analysis workers are busy");
}

SessionStore::WorkerSlot::~WorkerSlot() { store_.workers_.release(); }

}  // namespace chipfire::server
