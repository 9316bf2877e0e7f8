#pragma once

#include <string>

#include "efk/service/session.hpp"

namespace httplib {
class Server;
}

namespace efk::service {

// HTTP status used for an error code.
int http_status(ErrorCode code);

// POST /sessions, POST /sessions/{id}/moves, GET /sessions/{id},
// GET /sessions/{id}/export, GET /sessions and GET /parse?ordinal=...
void register_routes(httplib::Server& server, SessionStore& store);

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string snapshot;  // empty: no snapshot
  std::string static_dir;  // served at / when set
};

// Blocks until the server stops (SIGINT/SIGTERM), then writes the snapshot.
int serve(const ServeOptions& options);

}  // namespace efk::service
