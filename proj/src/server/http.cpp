#include "chipfire/server.hpp"

// after Eigen: <resolv.h> defines a _res macro that collides with Eigen internals
#include <httplib.h>

namespace chipfire::server {

struct HttpServer::Impl {
  Service& service;
  httplib::Server http;

  explicit Impl(Service& s) : service(s) {
    const auto forward = [this](const httplib::Request& in, httplib::Response& out) {
      Request request{in.method, in.path, {}, in.body};
      for (const auto& [key, value] : in.params) request.query.emplace(key, value);
      const auto response = service.handle(request);
      out.status = response.status;
      out.set_content(response.body, "application/json");
    };
    const char* pattern = R"(/api/.*)";
    http.Get(pattern, forward);
    http.Post(pattern, forward);
    http.Put(pattern, forward);
    http.Delete(pattern, forward);
    // browser clients served from another origin
    http.set_post_routing_handler([](const httplib::Request&, httplib::Response& out) {
      out.set_header("Access-Control-Allow-Origin", "*");
    });
    http.Options(pattern, [](const httplib::Request&, httplib::Response& out) {
      out.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      out.set_header("Access-Control-Allow-Headers", "Content-Type");
      out.status = 204;
    });
  }
};

HttpServer::HttpServer(Service& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->http.listen(host, port); }
int HttpServer::bind_any_port(const std::string& host) { return impl_->http.bind_to_any_port(host); }
bool HttpServer::listen_after_bind() { return impl_->http.listen_after_bind(); }
void HttpServer::stop() { impl_->http.stop(); }
void HttpServer::wait_until_ready() const { impl_->http.wait_until_ready(); }

}  // namespace chipfire::server
