// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "balanced/service.h"

#include <thread>

#include <gtest/gtest.h>

#include "balanced/api_json.h"
#include "balanced/errors.h"
#include "balanced/http_driver.h"
#include "balanced/simulator.h"

namespace balanced {
namespace {

using nlohmann::json;

std::shared_ptr<const TypePools> Pools() {
  static const auto pools =
      std::make_shared<const TypePools>(SyntheticPools(DefaultTypes(), 500));
  return pools;
}

SessionManager::IdGenerator Counter() {
  return [n = 0]() mutable { return "sess-" + std::to_string(n++); };
}

std::string FirstOfType(const json& page, const std::string& type) {
  for (const json& slot : page.at("slots")) {
    if (slot.at("type") == type) return slot.at("id");
  }
  ADD_FAILURE() << "no " << type << " slot";
  return {};
}

int LiberalCount(const json& page) {
  int n = 0;
  for (const json& slot : page.at("slots")) n += slot.at("type") == "liberal";
  return n;
}

class ServiceTest : public ::testing::Test {
 protected:
  void SetUp() override {
    log_ = std::make_shared<MemoryEventLog>();
    manager_ = std::make_unique<SessionManager>(SessionConfig{}, Pools(), log_, Counter());
    reference_ = std::make_unique<SessionManager>(
        SessionConfig{}, Pools(), std::make_shared<MemoryEventLog>(), Counter());
    service_ = std::make_unique<ApiService>(*manager_);
    port_ = service_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { service_->ListenAfterBind(); });
    service_->WaitUntilReady();
    client_ = std::make_unique<ApiClient>("http://127.0.0.1:" + std::to_string(port_));
  }

  void TearDown() override {
    service_->Stop();
    thread_.join();
  }

  std::shared_ptr<MemoryEventLog> log_;
  std::unique_ptr<SessionManager> manager_;
  std::unique_ptr<SessionManager> reference_;
  std::unique_ptr<ApiService> service_;
  std::unique_ptr<ApiClient> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(ServiceTest, CreateWithDefaults) {
  const auto r = client_->Send("POST", "/sessions", json::object());
  ASSERT_EQ(r.status, 201) << r.body.dump();
  EXPECT_EQ(r.body.at("constraints").at("lower_liberal"), 0.2);
  EXPECT_EQ(r.body.at("constraints").at("upper_liberal"), 0.8);
  EXPECT_EQ(r.body.at("history").size(), 1u);
  EXPECT_EQ(r.body.at("t"), 0);
  const int lib = LiberalCount(r.body.at("feeds").at("balanced"));
  EXPECT_GE(lib, 2);
  EXPECT_LE(lib, 8);
  // No body at all is the same as an empty object.
  EXPECT_EQ(client_->Send("POST", "/sessions").status, 201);
}

TEST_F(ServiceTest, SameSeedSamePages) {
  const json a = client_->CreateSession({{"seed", 42}});
  const json b = client_->CreateSession({{"seed", 42}});
  EXPECT_NE(a.at("session_id"), b.at("session_id"));
  EXPECT_EQ(a.at("feeds"), b.at("feeds"));
}

TEST_F(ServiceTest, FacadeMatchesSessionLayer) {
  const json created = client_->CreateSession({{"seed", 7}});
  const SessionState direct = reference_->Create(7);
  EXPECT_EQ(created, SessionToJson(direct));

  const std::string id = created.at("session_id");
  std::string lib = FirstOfType(created.at("feeds").at("balanced"), "liberal");
  json clicked = client_->Click(id, "balanced", lib);
  SessionState d = reference_->Click(id, Feed::kBalanced, lib);
  EXPECT_EQ(clicked.at("feeds"), FeedsToJson(d));
  EXPECT_EQ(clicked.at("history_point"), HistoryPointToJson(d.history.back()));
  EXPECT_EQ(clicked.at("t"), 1);

  const json changed = client_->SetConstraints(id, 0.3, 0.7);
  d = reference_->ChangeConstraints(id, 0.3, 0.7);
  EXPECT_EQ(changed.at("balanced"), PageToJson(d.balanced_page, d.config.type_set()));
  EXPECT_EQ(changed.at("constraints"), ConstraintsToJson(d));

  client_->Advance(id);
  d = reference_->Advance(id);
  EXPECT_EQ(client_->History(id).at("history"), HistoryToJson(d));
  EXPECT_EQ(client_->Session(id), SessionToJson(d));
  for (const json& point : client_->History(id).at("history")) {
    EXPECT_NO_THROW(HistoryPointFromJson(point));
  }
}

TEST_F(ServiceTest, FeedsAreSynchronousAndIdempotent) {
  const std::string id = client_->CreateSession({{"seed", 3}}).at("session_id");
  const json a = client_->Feeds(id);
  const json b = client_->Feeds(id);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.at("unfiltered").at("iteration"), a.at("balanced").at("iteration"));
  EXPECT_EQ(client_->History(id), client_->History(id));
  EXPECT_EQ(log_->size(), 2u);
}

TEST_F(ServiceTest, ClicksUpToTheCap) {
  const std::string id = client_->CreateSession({{"seed", 5}}).at("session_id");
  double prev = 0.0;
  for (int i = 0; i < 8; ++i) {
    const json feeds = client_->Feeds(id);
    const json r = client_->Click(id, "balanced", FirstOfType(feeds.at("balanced"), "liberal"));
    const double pct = r.at("history_point").at("pct_liberal_balanced");
    EXPECT_LE(pct, 0.8);
    if (prev < 0.8) EXPECT_GE(pct, prev);
    prev = pct;
  }
  EXPECT_EQ(client_->History(id).at("history").size(), 9u);
}

TEST_F(ServiceTest, ClickLookupIsScopedToTheNamedFeed) {
  // A high floor leaves the unfiltered page with conservative articles the
  // balanced page does not show.
  const json created =
      client_->CreateSession({{"seed", 5}, {"lower_liberal", 0.7}, {"upper_liberal", 0.9}});
  const std::string id = created.at("session_id");
  const json& unfiltered = created.at("feeds").at("unfiltered");
  const json& balanced = created.at("feeds").at("balanced");
  std::string only_unfiltered;
  for (const json& slot : unfiltered.at("slots")) {
    bool shared = false;
    for (const json& other : balanced.at("slots")) shared |= other.at("id") == slot.at("id");
    if (!shared) only_unfiltered = slot.at("id");
  }
  ASSERT_FALSE(only_unfiltered.empty());
  const auto r = client_->Send("POST", "/sessions/" + id + "/clicks",
                               json{{"feed", "balanced"}, {"article_id", only_unfiltered}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(r.body.at("error").at("code"), "invalid_input");
  EXPECT_EQ(client_->Click(id, "unfiltered", only_unfiltered).at("t"), 1);
}

TEST_F(ServiceTest, StaleClickIsRejected) {
  const json created = client_->CreateSession({{"seed", 5}});
  const std::string id = created.at("session_id");
  const std::string first = created.at("feeds").at("balanced").at("slots")[0].at("id");
  client_->Click(id, "balanced", first);
  const auto r = client_->Send("POST", "/sessions/" + id + "/clicks",
                               json{{"feed", "balanced"}, {"article_id", first}});
  EXPECT_EQ(r.status, 409);
  EXPECT_EQ(client_->Session(id).at("t"), 1);
}

TEST_F(ServiceTest, ConstraintEndpoint) {
  const std::string id = client_->CreateSession({{"seed", 9}}).at("session_id");
  json r = client_->SetConstraints(id, 0.2, 0.8);
  EXPECT_EQ(r.at("constraints").at("lower_liberal"), 0.2);
  EXPECT_EQ(r.at("constraints").at("upper_liberal"), 0.8);
  r = client_->SetConstraints(id, 0.5, 0.5);
  EXPECT_EQ(LiberalCount(r.at("balanced")), 5);
  const auto bad = client_->Send("PUT", "/sessions/" + id + "/constraints",
                                 json{{"lower_liberal", 0.8}, {"upper_liberal", 0.2}});
  EXPECT_EQ(bad.status, 422);
  EXPECT_EQ(bad.body.at("error").at("code"), "infeasible_constraints");
  EXPECT_EQ(client_->Session(id).at("constraints").at("lower_liberal"), 0.5);
}

TEST_F(ServiceTest, ErrorResponses) {
  auto r = client_->Send("GET", "/sessions/nope/feeds");
  EXPECT_EQ(r.status, 404);
  EXPECT_EQ(r.body.at("error").at("code"), "not_found");
  EXPECT_EQ(client_->Send("GET", "/sessions/nope/history").status, 404);
  EXPECT_EQ(client_->Send("GET", "/sessions/nope").status, 404);
  EXPECT_EQ(client_->Send("POST", "/sessions/nope/clicks",
                          json{{"feed", "balanced"}, {"article_id", "x"}})
                .status,
            404);

  r = client_->Send("POST", "/sessions", json{{"lower_liberal", 0.9}, {"upper_liberal", 0.1}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body.at("error").at("code"), "infeasible_constraints");

  r = client_->Send("POST", "/sessions", json{{"seed", -1}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body.at("error").at("code"), "invalid_input");
  EXPECT_EQ(client_->Send("POST", "/sessions", json{{"colour", "red"}}).status, 422);

  const std::string id = client_->CreateSession().at("session_id");
  r = client_->Send("POST", "/sessions/" + id + "/clicks",
                    json{{"feed", "sideways"}, {"article_id", "x"}});
  EXPECT_EQ(r.status, 422);
  r = client_->Send("PUT", "/sessions/" + id + "/constraints", json{{"lower_liberal", 0.1}});
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(client_->Session(id).at("t"), 0);
}

TEST_F(ServiceTest, ClientRaisesTypedErrors) {
  try {
    client_->Feeds("missing");
    FAIL();
  } catch (const ApiCallError& e) {
    EXPECT_EQ(e.status(), 404);
    EXPECT_EQ(e.code(), "not_found");
  }
  ApiClient nowhere("http://127.0.0.1:1");
  EXPECT_THROW(nowhere.CreateSession(), TransportError);
}

TEST_F(ServiceTest, ScenarioOverHttpMatchesDirectRun) {
  Scenario s = LoadScenario("slider");
  s.iterations = 12;
  const RunResult direct = RunScenario(s, 4);
  const RunResult remote =
      RunScenarioViaHttp(s, 4, "http://127.0.0.1:" + std::to_string(port_));
  EXPECT_EQ(remote.rows, direct.rows);
  EXPECT_EQ(remote.summary, direct.summary);
}

TEST(ApiErrorTest, ExceptionMapping) {
  auto map = [](auto e) { return ToApiError(std::make_exception_ptr(e)); };
  EXPECT_EQ(map(UnknownSessionError("x")).status, 404);
  EXPECT_EQ(map(UnknownArticleError("x")).status, 409);
  EXPECT_EQ(map(InfeasibleConstraintsError("x")).status, 422);
  EXPECT_EQ(map(PoolExhaustedError(0, 1)).code, ApiErrorCode::kPoolExhausted);
  EXPECT_EQ(map(std::invalid_argument("x")).code, ApiErrorCode::kInvalidInput);
  const ApiError internal = map(std::runtime_error("boom"));
  EXPECT_EQ(internal.status, 500);
  EXPECT_EQ(internal.ToJson().at("error").at("code"), "internal");
}

TEST(ApiJsonTest, PageRoundTrip) {
  SeenSet seen;
  const FeedPage page =
      ComposePage({{3, 2}, 5}, *Pools(), seen, 4, Distribution{{0.6, 0.4}}, 11);
  EXPECT_EQ(PageFromJson(PageToJson(page, DefaultTypes()), DefaultTypes()), page);
}

}  // namespace
}  // namespace balanced
