#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "efk/wire.hpp"

namespace efk::service {

using wire::Json;

enum class Status { AwaitingI, AwaitingII, Finished };
const char* status_name(Status s);

// One game in progress. Specs look like
//   {"kind": "EFD", "A": "order:w+1", "B": "order:w+1", "clock": "w",
//    "engine": "II", "strategy": "identity", "seed": 7}
// Structures are "order:<length>", "group:<space>" (G_space, the space a
// successor ordinal) and "algebra:<dim>" (C^dim, PI games only).
class Session {
 public:
  virtual ~Session() = default;
  // Throws Error(MalformedSpec | UnsupportedStructure) for unusable specs.
  static std::unique_ptr<Session> create(const Json& spec);

  // Applies a human move; the engine then answers if it is its turn.
  // Illegal moves throw and leave the session unchanged.
  virtual void post_move(const Json& move) = 0;
  virtual Json state() const = 0;
  // State plus the spec, the move log and, once finished, the witness.
  virtual Json export_json() const = 0;
  virtual Status status() const = 0;

  const Json& spec() const { return spec_; }
  const std::vector<Json>& log() const { return log_; }

 protected:
  Json spec_;
  std::vector<Json> log_;
};

// Rebuilds the rounds of `transcript` through the game's step and answer
// checks and returns the transcript this produces.
Json replay_transcript(const Json& spec, const Json& transcript);

// Thread-safe registry. Mutations of one session are serialized; distinct
// sessions proceed independently.
class SessionStore {
 public:
  Json create(const Json& spec);
  Json post_move(const std::string& id, const Json& move);
  Json get(const std::string& id) const;
  Json export_session(const std::string& id) const;
  Json list() const;

  // One line per session: {"id", "spec", "log"}.
  void save_snapshot(const std::string& path) const;
  // Replays every session of a snapshot; returns how many were restored.
  std::size_t load_snapshot(const std::string& path);

 private:
  struct Entry {
    mutable std::mutex mu;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Entry> find(const std::string& id) const;
  std::string insert(std::unique_ptr<Session> s, std::string id = {});

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::size_t next_ = 1;
};

}  // namespace efk::service
