// Copyright 2026 The eafnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// HTTP/JSON service over one loaded game. The framework and its extensions
// are computed once at startup; requests only read them. Dialogue sessions
// are kept in memory and evicted after an idle timeout.
//
//   GET  /api/game
//   GET  /api/framework
//   GET  /api/extensions?semantics=preferred|stable
//   GET  /api/nash
//   POST /api/dialogue   {"sessionId"?: "...", "move": "WHY", ...}

#ifndef EAFNASH_SERVICE_H_
#define EAFNASH_SERVICE_H_

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "eafnash/explain.h"
#include "eafnash/formats.h"
#include "eafnash/game_framework.h"
#include "eafnash/nash_bridge.h"

namespace httplib {
class Server;
}  // namespace httplib

namespace eafnash {

// A request the client can fix; carries the HTTP status to answer with.
class ClientError : public std::runtime_error {
 public:
  ClientError(int status, const std::string& message, Json details = Json())
      : std::runtime_error(message), status_(status), details_(std::move(details)) {}

  int status() const { return status_; }
  const Json& details() const { return details_; }

 private:
  int status_;
  Json details_;
};

// Thread-safe map from session id to dialogue state. Updates to one session
// are serialized; different sessions do not contend beyond the map lookup.
class SessionStore {
 public:
  using Clock = std::chrono::steady_clock;

  explicit SessionStore(std::chrono::seconds idle_timeout,
                        std::function<Clock::time_point()> now = Clock::now);

  // Stores `state` under a fresh 128-bit random id and returns the id.
  std::string create(DialogueState state);

  // Runs `update` on the session's state under the session lock and stores
  // its result. Returns false when the id is unknown or expired.
  bool update(const std::string& id,
              const std::function<DialogueState(const DialogueState&)>& update);

  std::optional<DialogueState> get(const std::string& id);
  void erase(const std::string& id);
  // Drops every session idle for longer than the timeout.
  std::size_t evict_idle();
  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mutex;
    DialogueState state;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> lookup(const std::string& id);

  std::chrono::seconds idle_timeout_;
  std::function<Clock::time_point()> now_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
};

std::string random_session_id();

struct ServiceOptions {
  SolveOptions solve;
  std::chrono::seconds idle_timeout{30 * 60};
};

class Service {
 public:
  explicit Service(std::shared_ptr<const Game> game, ServiceOptions options = {});

  Json get_game() const;
  Json get_framework() const;
  // Throws ClientError(400) naming the allowed values.
  Json get_extensions(std::string_view semantics) const;
  Json get_nash() const;
  // Request: a move object plus an optional "sessionId". A missing id opens a
  // new session. Response: {"sessionId", "reply", "closed"}.
  Json post_dialogue(const Json& request);

  const GameFramework& framework() const { return gf_; }
  const SolveReport& report() const { return report_; }
  SessionStore& sessions() { return sessions_; }

 private:
  GameFramework gf_;
  SolveReport report_;
  Json game_json_;
  Json framework_json_;
  SessionStore sessions_;
};

// Registers the routes (with permissive CORS headers) on `server`.
void register_routes(httplib::Server& server, Service& service);

// Blocks serving on host:port.
bool serve(Service& service, const std::string& host, int port);

}  // namespace eafnash

#endif  // EAFNASH_SERVICE_H_
