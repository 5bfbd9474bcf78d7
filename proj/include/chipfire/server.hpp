#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <semaphore>
#include <shared_mutex>
#include <stdexcept>
#include <stop_token>
#include <string>
#include <unordered_map>
#include <vector>

#include "chipfire/divisor.hpp"

namespace chipfire::server {

using Clock = std::chrono::system_clock;

/// A failure to report to the client as {code, message, path}.
class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(int status, std::string code, const std::string& message, std::string path = {})
      : std::runtime_error(message), status_(status), code_(std::move(code)), path_(std::move(path)) {}

  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  int status_;
  std::string code_;
  std::string path_;
};

struct StoreOptions {
  std::chrono::seconds ttl = std::chrono::hours(24);
  std::optional<std::filesystem::path> log_path;  // append-only move log
  unsigned analysis_workers = 2;                  // concurrent long analyses
  std::chrono::milliseconds worker_wait = std::chrono::seconds(5);
  std::size_t rank_candidate_limit = 200'000;     // effective divisors a rank query may scan
  std::function<Clock::time_point()> now = [] { return Clock::now(); };
};

struct Snapshot {
  std::string id;
  Divisor initial;
  Divisor current;
  std::vector<Move> history;
};

/// In-memory sessions. Moves on one session are serialized; reads take a
/// snapshot under a shared lock and compute outside it.
class SessionStore {
 public:
  explicit SessionStore(StoreOptions options = {});
  ~SessionStore();
  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  const StoreOptions& options() const noexcept { return options_; }

  std::string create(const Divisor& initial);
  Snapshot snapshot(const std::string& id);
  Snapshot apply(const std::string& id, const Move& move);
  Snapshot undo(const std::string& id);
  /// Token that fires when the session expires or the store shuts down.
  std::stop_token stop_token(const std::string& id);
  /// Drops sessions idle for longer than the TTL and cancels their work.
  std::size_t purge_expired();
  std::size_t size() const;

  /// Bounded pool for long analyses. Throws Busy when no slot frees up in time.
  class WorkerSlot {
   public:
    explicit WorkerSlot(SessionStore& store);
    ~WorkerSlot();
    WorkerSlot(const WorkerSlot&) = delete;
    WorkerSlot& operator=(const WorkerSlot&) = delete;

   private:
    SessionStore& store_;
  };

 private:
  struct Session;
  std::shared_ptr<Session> find(const std::string& id);
  void append_log(const std::string& line);
  void replay_log();
  std::string fresh_id();

  StoreOptions options_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex log_mutex_;
  std::counting_semaphore<> workers_;
};

struct Request {
  std::string method;
  std::string path;
  std::map<std::string, std::string> query;
  std::string body;
};

struct Response {
  int status = 200;
  std::string body;  // JSON
};

/// Routes protocol requests to the store. Transport-free, so it can be
/// tested without sockets.
class Service {
 public:
  explicit Service(SessionStore& store) : store_(store) {}
  Response handle(const Request& request);

 private:
  SessionStore& store_;
};

/// HTTP transport over the service.
class HttpServer {
 public:
  explicit HttpServer(Service& service);
  ~HttpServer();
  /// Binds and serves until stop(); returns false if the bind failed.
  bool listen(const std::string& host, int port);
  /// Binds to a free port and returns it, or -1.
  int bind_any_port(const std::string& host);
  /// Serves on a socket bound by bind_any_port.
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace chipfire::server
