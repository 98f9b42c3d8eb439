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

#ifndef BALANCED_SERVICE_H_
#define BALANCED_SERVICE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "balanced/session_manager.h"

namespace httplib {
class Server;
}

namespace balanced {

// HTTP/JSON facade over a SessionManager:
//
//   POST /sessions                      create (optional seed, bounds)
//   GET  /sessions/{id}                 full descriptor
//   GET  /sessions/{id}/feeds           both current pages
//   POST /sessions/{id}/clicks          {"feed", "article_id"}
//   POST /sessions/{id}/advance         iteration without a click
//   PUT  /sessions/{id}/constraints     {"lower_liberal", "upper_liberal"}
//   GET  /sessions/{id}/history         dashboard trace
//
// plus the UI bundle under "/" when a static directory is given.
class ApiService {
 public:
  explicit ApiService(SessionManager& sessions,
                      std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~ApiService();
  ApiService(const ApiService&) = delete;
  ApiService& operator=(const ApiService&) = delete;

  // Blocks until Stop(). Returns false when the address cannot be bound.
  bool Listen(const std::string& host, int port);
  // Binds an ephemeral port and returns it, or -1. Serve with
  // ListenAfterBind().
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void Stop();
  void WaitUntilReady() const;

 private:
  void RegisterRoutes();

  SessionManager& sessions_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace balanced

#endif  // BALANCED_SERVICE_H_
