#include "efk/service/http.hpp"

#include <csignal>
#include <iostream>

#include "httplib.h"

namespace efk::service {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::NotYourTurn:
    case ErrorCode::GameOver: return 409;
    case ErrorCode::Internal: return 500;
    default: return 400;
  }
}

namespace {

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& body) {
  try {
    body();
  } catch (const Error& e) {
    reply(res, http_status(e.code()), wire::error_json(e));
  } catch (const Json::exception& e) {
    reply(res, 400, wire::error_json(ErrorCode::MalformedSpec, e.what()));
  } catch (const std::exception& e) {
    reply(res, 500, wire::error_json(ErrorCode::Internal, e.what()));
  }
}

Json body_json(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedSpec, std::string("request body is not JSON: ") + e.what());
  }
}

httplib::Server* running = nullptr;

void stop_running(int) {
  if (running) running->stop();
}

}  // namespace

void register_routes(httplib::Server& server, SessionStore& store) {
  server.Post("/sessions", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 201, store.create(body_json(req))); });
  });
  server.Post(R"(/sessions/([^/]+)/moves)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      Json move = body_json(req);
      reply(res, 200, store.post_move(req.matches[1], move));
    });
  });
  server.Get(R"(/sessions/([^/]+)/export)", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, store.export_session(req.matches[1])); });
  });
  server.Get(R"(/sessions/([^/]+))", [&store](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, store.get(req.matches[1])); });
  });
  server.Get("/sessions", [&store](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { reply(res, 200, store.list()); });
  });
  server.Get("/parse", [](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      if (!req.has_param("ordinal")) throw Error(ErrorCode::MalformedSpec, "missing ?ordinal=");
      Ordinal a = Ordinal::parse(req.get_param_value("ordinal"));
      Json out = wire::ordinal_json(a);
      out["pretty"] = a.pretty();
      reply(res, 200, out);
    });
  });
}

int serve(const ServeOptions& options) {
  SessionStore store;
  if (!options.snapshot.empty()) {
    std::size_t n = store.load_snapshot(options.snapshot);
    if (n) std::cerr << "restored " << n << " sessions from " << options.snapshot << "\n";
  }
  httplib::Server server;
  register_routes(server, store);
  if (!options.static_dir.empty() && !server.set_mount_point("/", options.static_dir)) {
    std::cerr << "static directory " << options.static_dir << " does not exist\n";
    return 2;
  }
  running = &server;
  std::signal(SIGINT, stop_running);
  std::signal(SIGTERM, stop_running);
  std::cerr << "listening on http://" << options.host << ":" << options.port << "\n";
  bool ok = server.listen(options.host, options.port);
  running = nullptr;
  if (!options.snapshot.empty()) store.save_snapshot(options.snapshot);
  return ok ? 0 : 1;
}

}  // namespace efk::service
