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

#include "balanced/http_driver.h"

#include <fmt/format.h>

#include "balanced/api_json.h"
#include "httplib.h"

namespace balanced {

using nlohmann::json;

ApiCallError::ApiCallError(int status, std::string code, const std::string& message)
    : TransportError(fmt::format("HTTP {} {}: {}", status, code, message)),
      status_(status),
      code_(std::move(code)) {}

ApiClient::ApiClient(const std::string& base_url)
    : client_(std::make_unique<httplib::Client>(base_url)) {
  client_->set_connection_timeout(5);
  client_->set_read_timeout(30);
}

ApiClient::~ApiClient() = default;

ApiClient::Response ApiClient::Send(std::string_view method, const std::string& path,
                                    const std::optional<json>& body) {
  const std::string payload = body ? body->dump() : std::string();
  httplib::Result result;
  if (method == "GET") {
    result = client_->Get(path);
  } else if (method == "POST") {
    result = client_->Post(path, payload, "application/json");
  } else if (method == "PUT") {
    result = client_->Put(path, payload, "application/json");
  } else {
    throw std::invalid_argument(fmt::format("unsupported method {}", method));
  }
  if (!result) {
    throw TransportError(fmt::format("{} {}: {}", method, path, httplib::to_string(result.error())));
  }
  Response response;
  response.status = result->status;
  if (!result->body.empty()) {
    response.body = json::parse(result->body, nullptr, /*allow_exceptions=*/false);
    if (response.body.is_discarded()) {
      throw TransportError(fmt::format("{} {}: response is not JSON", method, path));
    }
  }
  return response;
}

json ApiClient::Expect(std::string_view method, const std::string& path,
                       const std::optional<json>& body) {
  Response r = Send(method, path, body);
  if (r.status < 200 || r.status >= 300) {
    std::string code = "unknown", message;
    if (r.body.contains("error")) {
      code = r.body["error"].value("code", code);
      message = r.body["error"].value("message", "");
    }
    throw ApiCallError(r.status, code, message);
  }
  return r.body;
}

json ApiClient::CreateSession(const json& body) { return Expect("POST", "/sessions", body); }

json ApiClient::Session(std::string_view id) {
  return Expect("GET", fmt::format("/sessions/{}", id), std::nullopt);
}

json ApiClient::Feeds(std::string_view id) {
  return Expect("GET", fmt::format("/sessions/{}/feeds", id), std::nullopt);
}

json ApiClient::Click(std::string_view id, std::string_view feed, std::string_view article_id) {
  return Expect("POST", fmt::format("/sessions/{}/clicks", id),
                json{{"feed", feed}, {"article_id", article_id}});
}

json ApiClient::Advance(std::string_view id) {
  return Expect("POST", fmt::format("/sessions/{}/advance", id), json::object());
}

json ApiClient::SetConstraints(std::string_view id, double lower_liberal, double upper_liberal) {
  return Expect("PUT", fmt::format("/sessions/{}/constraints", id),
                json{{"lower_liberal", lower_liberal}, {"upper_liberal", upper_liberal}});
}

json ApiClient::History(std::string_view id) {
  return Expect("GET", fmt::format("/sessions/{}/history", id), std::nullopt);
}

RunResult RunScenarioViaHttp(const Scenario& scenario, std::uint64_t seed,
                             const std::string& base_url) {
  scenario.Validate();
  const UserModel user = scenario.user();
  const TypeSet types = scenario.session.type_set();
  const std::string feed_name(FeedName(scenario.click_feed));

  ApiClient client(base_url);
  const json created = client.CreateSession({{"seed", seed},
                                             {"lower_liberal", scenario.session.lower_liberal},
                                             {"upper_liberal", scenario.session.upper_liberal}});
  const std::string id = created.at("session_id").get<std::string>();

  RunResult result;
  result.scenario = scenario.name;
  result.seed = seed;
  auto row_of = [](const json& point, std::string clicked) {
    const HistoryPoint p = HistoryPointFromJson(point);
    return RunRow{p.t, p.pct_liberal_unfiltered, p.pct_liberal_balanced, p.lower_liberal,
                  p.upper_liberal, std::move(clicked)};
  };
  result.rows.push_back(row_of(created.at("history").back(), ""));

  json feeds = created.at("feeds");
  result.page_size = feeds.at(feed_name).at("page_size").get<std::size_t>();
  Engine engine = MakeEngine(seed, kUserModelStream);
  for (std::uint64_t i = 1; i <= scenario.iterations; ++i) {
    for (const auto& change : scenario.schedule) {
      if (change.iteration == i) {
        client.SetConstraints(id, change.lower_liberal, change.upper_liberal);
        feeds = client.Feeds(id);
      }
    }
    const FeedPage page = PageFromJson(feeds.at(feed_name), types);
    std::string clicked_type;
    json step;
    if (auto article = SampleClick(user, page, engine)) {
      clicked_type = types.name(ResolveClick(page, *article).clicked_type);
      step = client.Click(id, feed_name, *article);
    } else {
      step = client.Advance(id);
    }
    feeds = step.at("feeds");
    result.rows.push_back(row_of(step.at("history_point"), std::move(clicked_type)));
  }
  Summarize(result);
  return result;
}

}  // namespace balanced
