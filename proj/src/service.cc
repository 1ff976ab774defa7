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

#include "eafnash/service.h"

#include <array>
#include <cstdio>
#include <random>

#include "httplib.h"

namespace eafnash {
namespace {

constexpr char kJsonType[] = "application/json";

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void send_error(httplib::Response& res, int status, const std::string& message,
                const Json& details = Json()) {
  Json body = {{"error", message}};
  if (!details.is_null()) body.update(details);
  send_json(res, status, body);
}

// Maps the library's exception types onto HTTP statuses.
template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    send_json(res, 200, handler());
  } catch (const ClientError& e) {
    send_error(res, e.status(), e.what(), e.details());
  } catch (const DialogueError& e) {
    send_error(res, 400, e.what());
  } catch (const ExplanationRefused& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

}  // namespace

SessionStore::SessionStore(std::chrono::seconds idle_timeout,
                           std::function<Clock::time_point()> now)
    : idle_timeout_(idle_timeout), now_(std::move(now)) {}

std::string random_session_id() {
  // Two independent 64-bit draws from the OS entropy source.
  static thread_local std::random_device device;
  std::uniform_int_distribution<std::uint64_t> dist;
  std::array<char, 33> buffer{};
  std::snprintf(buffer.data(), buffer.size(), "%016llx%016llx",
                static_cast<unsigned long long>(dist(device)),
                static_cast<unsigned long long>(dist(device)));
  return std::string(buffer.data(), 32);
}

std::string SessionStore::create(DialogueState state) {
  auto entry = std::make_shared<Entry>();
  entry->last_used = now_();
  std::lock_guard<std::mutex> lock(mutex_);
  std::string id;
  do {
    id = random_session_id();
  } while (sessions_.count(id) > 0);
  state.session_id = id;
  entry->state = std::move(state);
  sessions_.emplace(id, std::move(entry));
  return id;
}

std::shared_ptr<SessionStore::Entry> SessionStore::lookup(const std::string& id) {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  // last_used is only written under the entry lock, but a stale read here at
  // worst keeps an expired session alive for one more request.
  std::lock_guard<std::mutex> entry_lock(it->second->mutex);
  if (now_() - it->second->last_used > idle_timeout_) {
    sessions_.erase(it);
    return nullptr;
  }
  return it->second;
}

bool SessionStore::update(
    const std::string& id,
    const std::function<DialogueState(const DialogueState&)>& update) {
  std::shared_ptr<Entry> entry = lookup(id);
  if (!entry) return false;
  std::lock_guard<std::mutex> lock(entry->mutex);
  DialogueState next = update(entry->state);
  next.session_id = id;
  entry->state = std::move(next);
  entry->last_used = now_();
  return true;
}

std::optional<DialogueState> SessionStore::get(const std::string& id) {
  std::shared_ptr<Entry> entry = lookup(id);
  if (!entry) return std::nullopt;
  std::lock_guard<std::mutex> lock(entry->mutex);
  return entry->state;
}

void SessionStore::erase(const std::string& id) {
  std::lock_guard<std::mutex> lock(mutex_);
  sessions_.erase(id);
}

std::size_t SessionStore::evict_idle() {
  std::lock_guard<std::mutex> lock(mutex_);
  const auto now = now_();
  std::size_t evicted = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock<std::mutex> entry_lock(it->second->mutex);
    const bool idle = now - it->second->last_used > idle_timeout_;
    entry_lock.unlock();
    if (idle) {
      it = sessions_.erase(it);
      ++evicted;
    } else {
      ++it;
    }
  }
  return evicted;
}

std::size_t SessionStore::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return sessions_.size();
}

Service::Service(std::shared_ptr<const Game> game, ServiceOptions options)
    : gf_(assemble_framework(std::move(game))),
      report_(solve(gf_, options.solve)),
      game_json_(game_to_json(gf_.game())),
      framework_json_(framework_to_json(to_document(gf_))),
      sessions_(options.idle_timeout) {}

Json Service::get_game() const { return game_json_; }

Json Service::get_framework() const {
  Json out = framework_json_;
  out["counts"] = counts_to_json(argument_counts(gf_.game()));
  return out;
}

Json Service::get_extensions(std::string_view semantics) const {
  Semantics parsed;
  try {
    parsed = parse_semantics(semantics);
  } catch (const std::invalid_argument& e) {
    throw ClientError(400, e.what(),
                      {{"allowed", Json::array({"preferred", "stable"})}});
  }
  if (parsed == Semantics::kAdmissible) {
    throw ClientError(400, "semantics 'admissible' is not served",
                      {{"allowed", Json::array({"preferred", "stable"})}});
  }
  return results_to_json(gf_, report_, parsed);
}

Json Service::get_nash() const {
  Json nash = Json::array();
  for (const StrategyProfile& s : report_.nash) {
    nash.push_back({{"profile", profile_to_json(gf_.game(), s)},
                    {"gameArgument", gf_.framework().name(gf_.game_argument(s))}});
  }
  return {{"nash", nash}};
}

Json Service::post_dialogue(const Json& request) {
  if (!request.is_object()) throw ClientError(400, "expected a JSON object");
  const Move move = move_from_json(gf_, request);
  sessions_.evict_idle();

  std::optional<Reply> reply;
  bool closed = false;
  const auto step = [&](const DialogueState& state) {
    auto [r, next] = dialogue_step(gf_, report_, state, move);
    reply = std::move(r);
    closed = next.closed;
    return next;
  };

  std::string id;
  if (auto it = request.find("sessionId"); it != request.end() && !it->is_null()) {
    if (!it->is_string()) throw ClientError(400, "'sessionId' must be a string");
    id = it->get<std::string>();
    if (!sessions_.update(id, step)) {
      throw ClientError(404, "unknown or expired session '" + id + "'");
    }
  } else {
    id = sessions_.create(step(DialogueState{}));
  }
  return {{"sessionId", id},
          {"reply", reply_to_json(gf_, *reply)},
          {"closed", closed}};
}

void register_routes(httplib::Server& server, Service& service) {
  server.set_default_headers({
      {"Access-Control-Allow-Origin", "*"},
      {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
      {"Access-Control-Allow-Headers", "Content-Type"},
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Get("/api/game", [&service](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return service.get_game(); });
  });
  server.Get("/api/framework",
             [&service](const httplib::Request&, httplib::Response& res) {
               guarded(res, [&] { return service.get_framework(); });
             });
  server.Get("/api/extensions",
             [&service](const httplib::Request& req, httplib::Response& res) {
               guarded(res, [&] {
                 const std::string semantics = req.has_param("semantics")
                                                   ? req.get_param_value("semantics")
                                                   : "preferred";
                 return service.get_extensions(semantics);
               });
             });
  server.Get("/api/nash", [&service](const httplib::Request&, httplib::Response& res) {
    guarded(res, [&] { return service.get_nash(); });
  });
  server.Post("/api/dialogue",
              [&service](const httplib::Request& req, httplib::Response& res) {
                guarded(res, [&] {
                  Json body;
                  try {
                    body = parse_json_text(req.body);
                  } catch (const FormatError& e) {
                    throw ClientError(400, e.what());
                  }
                  return service.post_dialogue(body);
                });
              });
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, service);
  return server.listen(host, port);
}

}  // namespace eafnash
