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

#ifndef BALANCED_HTTP_DRIVER_H_
#define BALANCED_HTTP_DRIVER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "balanced/errors.h"
#include "balanced/simulator.h"
#include "json.hpp"

namespace httplib {
class Client;
}

namespace balanced {

// Non-2xx response from the service.
class ApiCallError : public TransportError {
 public:
  ApiCallError(int status, std::string code, const std::string& message);

  int status() const { return status_; }
  const std::string& code() const { return code_; }

 private:
  int status_;
  std::string code_;
};

// Minimal JSON client for the service API. Throws TransportError when the
// server cannot be reached and ApiCallError for error responses.
class ApiClient {
 public:
  // base_url like "http://127.0.0.1:8080".
  explicit ApiClient(const std::string& base_url);
  ~ApiClient();

  nlohmann::json CreateSession(const nlohmann::json& body = nlohmann::json::object());
  nlohmann::json Session(std::string_view id);
  nlohmann::json Feeds(std::string_view id);
  nlohmann::json Click(std::string_view id, std::string_view feed,
                       std::string_view article_id);
  nlohmann::json Advance(std::string_view id);
  nlohmann::json SetConstraints(std::string_view id, double lower_liberal,
                                double upper_liberal);
  nlohmann::json History(std::string_view id);

  // Raw access for tests: status and parsed body of any request.
  struct Response {
    int status = 0;
    nlohmann::json body;
  };
  Response Send(std::string_view method, const std::string& path,
                const std::optional<nlohmann::json>& body = std::nullopt);

 private:
  nlohmann::json Expect(std::string_view method, const std::string& path,
                        const std::optional<nlohmann::json>& body);

  std::unique_ptr<httplib::Client> client_;
};

// The scenario loop driven through a running service. Learner and page
// settings come from the server; the scenario supplies the seed, the
// starting bounds, the user model and the schedule.
RunResult RunScenarioViaHttp(const Scenario& scenario, std::uint64_t seed,
                             const std::string& base_url);

}  // namespace balanced

#endif  // BALANCED_HTTP_DRIVER_H_
