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

#include <atomic>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "httplib.h"
#include "test_util.h"

namespace eafnash {
namespace {

using ::testing::Contains;
using ::testing::HasSubstr;

std::vector<std::string> Referents(const Json& reply) {
  return reply["reply"]["referents"].get<std::vector<std::string>>();
}

class StagHuntServiceTest : public ::testing::Test {
 protected:
  StagHuntServiceTest() : service_(testing::load_fixture("stag_hunt")) {}

  std::string id(const std::string& label) const {
    return testing::stag_hunt_labels().at(label);
  }

  Service service_;
};

TEST_F(StagHuntServiceTest, ReadEndpoints) {
  EXPECT_EQ(service_.get_framework()["nodes"].size(), 16u);
  EXPECT_EQ(service_.get_game()["players"].size(), 2u);
  const Json nash = service_.get_nash();
  ASSERT_EQ(nash["nash"].size(), 2u);
  EXPECT_EQ(nash["nash"][0]["profile"], Json({"stag", "stag"}));
  EXPECT_EQ(nash["nash"][1]["profile"], Json({"hare", "hare"}));
  EXPECT_EQ(service_.get_extensions("preferred")["extensions"].size(), 2u);
  // Idempotent.
  EXPECT_EQ(service_.get_extensions("stable"), service_.get_extensions("stable"));
}

TEST_F(StagHuntServiceTest, UnknownSemanticsListsAllowedValues) {
  try {
    service_.get_extensions("grounded");
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.status(), 400);
    EXPECT_EQ(e.details()["allowed"], Json({"preferred", "stable"}));
  }
}

TEST_F(StagHuntServiceTest, DialogueSession) {
  const Json first =
      service_.post_dialogue({{"move", "WHY"}, {"profile", {"stag", "stag"}}});
  const std::string session = first["sessionId"];
  EXPECT_EQ(session.size(), 32u);
  EXPECT_THAT(Referents(first), Contains(id("a1")));
  EXPECT_THAT(Referents(first), Contains(id("a3")));
  EXPECT_THAT(Referents(first), Contains(id("a4")));
  EXPECT_FALSE(first["reply"]["legalMoves"].empty());

  const Json second = service_.post_dialogue({{"sessionId", session},
                                              {"move", "WHY_DEFEAT"},
                                              {"attacker", id("a2")},
                                              {"target", id("a1")}});
  EXPECT_EQ(second["sessionId"], session);
  EXPECT_THAT(Referents(second), Contains(id("a5")));

  // Every referent resolves through the framework document.
  const Json framework = service_.get_framework();
  std::set<std::string> nodes;
  for (const auto& n : framework["nodes"]) nodes.insert(n["id"].get<std::string>());
  for (const auto& r : Referents(second)) EXPECT_TRUE(nodes.count(r)) << r;

  const Json end = service_.post_dialogue({{"sessionId", session}, {"move", "END"}});
  EXPECT_TRUE(end["closed"].get<bool>());
}

TEST_F(StagHuntServiceTest, DialogueErrors) {
  EXPECT_THROW(service_.post_dialogue({{"move", "CONCEDE"}}), DialogueError);
  try {
    service_.post_dialogue({{"sessionId", "feedface"}, {"move", "END"}});
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.status(), 404);
  }
  // A failed opening move does not leave a session behind.
  EXPECT_EQ(service_.sessions().size(), 0u);
}

TEST(SessionStoreTest, IdleEviction) {
  auto now = SessionStore::Clock::time_point{};
  SessionStore store(std::chrono::seconds(60), [&now] { return now; });
  const std::string a = store.create(DialogueState{});
  const std::string b = store.create(DialogueState{});
  EXPECT_NE(a, b);
  now += std::chrono::seconds(45);
  EXPECT_TRUE(store.update(b, [](const DialogueState& s) { return s; }));
  now += std::chrono::seconds(30);
  EXPECT_FALSE(store.get(a).has_value());
  EXPECT_TRUE(store.get(b).has_value());
  now += std::chrono::seconds(61);
  EXPECT_EQ(store.evict_idle(), 1u);
  EXPECT_EQ(store.size(), 0u);
}

TEST(SessionStoreTest, ConcurrentUpdatesAreSerialized) {
  SessionStore store(std::chrono::seconds(60));
  const std::string id = store.create(DialogueState{});
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&] {
      for (int k = 0; k < 100; ++k) {
        store.update(id, [](const DialogueState& s) {
          DialogueState next = s;
          next.transcript.push_back({});
          return next;
        });
      }
    });
  }
  for (auto& t : threads) t.join();
  EXPECT_EQ(store.get(id)->transcript.size(), 800u);
}

TEST(SessionIdTest, UniqueHex) {
  std::set<std::string> ids;
  for (int k = 0; k < 1000; ++k) {
    const std::string id = random_session_id();
    EXPECT_EQ(id.size(), 32u);
    EXPECT_EQ(id.find_first_not_of("0123456789abcdef"), std::string::npos);
    ids.insert(id);
  }
  EXPECT_EQ(ids.size(), 1000u);
}

TEST(MatchingPenniesServiceTest, NoStableExtensions) {
  Service service(testing::load_fixture("matching_pennies"));
  EXPECT_TRUE(service.get_extensions("stable")["extensions"].empty());
  EXPECT_TRUE(service.get_nash()["nash"].empty());
}

// End-to-end over a real socket.
TEST(HttpTest, Endpoints) {
  Service service(testing::load_fixture("stag_hunt"));
  httplib::Server server;
  register_routes(server, service);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread thread([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto nash = client.Get("/api/nash");
  ASSERT_TRUE(nash);
  EXPECT_EQ(nash->status, 200);
  EXPECT_EQ(nash->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(Json::parse(nash->body)["nash"].size(), 2u);

  auto framework = client.Get("/api/framework");
  ASSERT_TRUE(framework);
  EXPECT_EQ(Json::parse(framework->body)["nodes"].size(), 16u);

  auto bad = client.Get("/api/extensions?semantics=grounded");
  ASSERT_TRUE(bad);
  EXPECT_EQ(bad->status, 400);
  EXPECT_EQ(Json::parse(bad->body)["allowed"], Json({"preferred", "stable"}));

  auto stable = client.Get("/api/extensions?semantics=stable");
  ASSERT_TRUE(stable);
  EXPECT_EQ(Json::parse(stable->body)["extensions"].size(), 2u);

  auto open = client.Post("/api/dialogue",
                          R"({"move": "WHY", "profile": ["stag", "stag"]})",
                          "application/json");
  ASSERT_TRUE(open);
  ASSERT_EQ(open->status, 200);
  const Json opened = Json::parse(open->body);
  const std::string session = opened["sessionId"];

  const Json follow = {{"sessionId", session},
                       {"move", "WHY_DEFEAT"},
                       {"attacker", "g:stag,stag"},
                       {"target", "g:stag,hare"}};
  auto next = client.Post("/api/dialogue", follow.dump(), "application/json");
  ASSERT_TRUE(next);
  EXPECT_EQ(next->status, 200);
  EXPECT_THAT(Json::parse(next->body)["reply"]["prose"].get<std::string>(),
              HasSubstr("better outcome to player 1"));

  auto concede = client.Post("/api/dialogue", R"({"move": "CONCEDE"})", "application/json");
  ASSERT_TRUE(concede);
  EXPECT_EQ(concede->status, 400);

  auto garbage = client.Post("/api/dialogue", "{nope", "application/json");
  ASSERT_TRUE(garbage);
  EXPECT_EQ(garbage->status, 400);

  auto expired = client.Post("/api/dialogue", R"({"sessionId": "00", "move": "END"})",
                             "application/json");
  ASSERT_TRUE(expired);
  EXPECT_EQ(expired->status, 404);

  auto preflight = client.Options("/api/dialogue");
  ASSERT_TRUE(preflight);
  EXPECT_EQ(preflight->status, 204);
  EXPECT_EQ(preflight->get_header_value("Access-Control-Allow-Origin"), "*");

  server.stop();
  thread.join();
}

}  // namespace
}  // namespace eafnash
