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

#include <algorithm>
#include <stdexcept>

#include "balanced/api_json.h"
#include "httplib.h"

namespace balanced {
namespace {

using nlohmann::json;

constexpr char kJson[] = "application/json";

void Reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void ReplyError(httplib::Response& res, const ApiError& error) {
  Reply(res, error.status, error.ToJson());
}

// Empty bodies parse as an empty object.
json ParseBody(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json body = json::parse(req.body);
  if (!body.is_object()) throw std::invalid_argument("request body must be a JSON object");
  return body;
}

double RequireNumber(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_number()) {
    throw std::invalid_argument(std::string("'") + key + "' must be a number");
  }
  return it->get<double>();
}

std::optional<double> OptionalNumber(const json& body, const char* key) {
  if (!body.contains(key)) return std::nullopt;
  return RequireNumber(body, key);
}

std::string RequireString(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw std::invalid_argument(std::string("'") + key + "' must be a string");
  }
  return it->get<std::string>();
}

void RejectUnknownKeys(const json& body, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : body.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw std::invalid_argument("unknown field '" + key + "'");
    }
  }
}

// Runs a handler, turning exceptions into error responses.
template <typename F>
httplib::Server::Handler Guard(F handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (...) {
      ReplyError(res, ToApiError(std::current_exception()));
    }
  };
}

json Iteration(const SessionState& s) {
  return {{"session_id", s.session_id},
          {"t", s.t()},
          {"feeds", FeedsToJson(s)},
          {"history_point", HistoryPointToJson(s.history.back())}};
}

}  // namespace

ApiService::ApiService(SessionManager& sessions,
                       std::optional<std::filesystem::path> static_dir)
    : sessions_(sessions), server_(std::make_unique<httplib::Server>()) {
  RegisterRoutes();
  if (static_dir && std::filesystem::is_directory(*static_dir)) {
    server_->set_mount_point("/", static_dir->string());
  }
}

ApiService::~ApiService() { Stop(); }

void ApiService::RegisterRoutes() {
  httplib::Server& srv = *server_;

  srv.Post("/sessions", Guard([this](const httplib::Request& req, httplib::Response& res) {
    const json body = ParseBody(req);
    RejectUnknownKeys(body, {"seed", "lower_liberal", "upper_liberal"});
    std::optional<std::uint64_t> seed;
    if (body.contains("seed")) {
      if (!body["seed"].is_number_unsigned()) {
        throw std::invalid_argument("'seed' must be a non-negative integer");
      }
      seed = body["seed"].get<std::uint64_t>();
    }
    const SessionState s = sessions_.Create(seed, OptionalNumber(body, "lower_liberal"),
                                            OptionalNumber(body, "upper_liberal"));
    Reply(res, 201, SessionToJson(s));
  }));

  srv.Get("/sessions/:id", Guard([this](const httplib::Request& req, httplib::Response& res) {
    Reply(res, 200, SessionToJson(sessions_.Get(req.path_params.at("id"))));
  }));

  srv.Get("/sessions/:id/feeds",
          Guard([this](const httplib::Request& req, httplib::Response& res) {
            const SessionState s = sessions_.Get(req.path_params.at("id"));
            json body = FeedsToJson(s);
            body["session_id"] = s.session_id;
            body["t"] = s.t();
            Reply(res, 200, body);
          }));

  srv.Post("/sessions/:id/clicks",
           Guard([this](const httplib::Request& req, httplib::Response& res) {
             const std::string id = req.path_params.at("id");
             sessions_.Get(id);  // 404 before validating the body
             const json body = ParseBody(req);
             RejectUnknownKeys(body, {"feed", "article_id"});
             auto feed = ParseFeed(RequireString(body, "feed"));
             if (!feed) throw std::invalid_argument("'feed' must be 'unfiltered' or 'balanced'");
             Reply(res, 200, Iteration(sessions_.Click(id, *feed, RequireString(body, "article_id"))));
           }));

  srv.Post("/sessions/:id/advance",
           Guard([this](const httplib::Request& req, httplib::Response& res) {
             Reply(res, 200, Iteration(sessions_.Advance(req.path_params.at("id"))));
           }));

  srv.Put("/sessions/:id/constraints",
          Guard([this](const httplib::Request& req, httplib::Response& res) {
            const std::string id = req.path_params.at("id");
            sessions_.Get(id);
            const json body = ParseBody(req);
            RejectUnknownKeys(body, {"lower_liberal", "upper_liberal"});
            const SessionState s = sessions_.ChangeConstraints(
                id, RequireNumber(body, "lower_liberal"), RequireNumber(body, "upper_liberal"));
            Reply(res, 200,
                  {{"session_id", s.session_id},
                   {"t", s.t()},
                   {"constraints", ConstraintsToJson(s)},
                   {"balanced", PageToJson(s.balanced_page, s.config.type_set())},
                   {"history_point", HistoryPointToJson(s.history.back())}});
          }));

  srv.Get("/sessions/:id/history",
          Guard([this](const httplib::Request& req, httplib::Response& res) {
            const SessionState s = sessions_.Get(req.path_params.at("id"));
            Reply(res, 200, {{"session_id", s.session_id}, {"history", HistoryToJson(s)}});
          }));
}

bool ApiService::Listen(const std::string& host, int port) {
  return server_->listen(host, port);
}

int ApiService::BindToAnyPort(const std::string& host) {
  return server_->bind_to_any_port(host);
}

bool ApiService::ListenAfterBind() { return server_->listen_after_bind(); }

void ApiService::Stop() {
  if (server_ && server_->is_running()) server_->stop();
}

void ApiService::WaitUntilReady() const { server_->wait_until_ready(); }

}  // namespace balanced
