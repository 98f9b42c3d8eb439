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

// Serves the balanced-news API (and the UI bundle, when built).

#include <csignal>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "balanced/errors.h"
#include "balanced/event_log.h"
#include "balanced/ingestion.h"
#include "balanced/service.h"
#include "balanced/session_manager.h"

namespace {

balanced::ApiService* g_service = nullptr;

void HandleSignal(int) {
  if (g_service != nullptr) g_service->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Balanced news service"};
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string corpus;
  std::string bias_map;
  std::string config_path;
  std::string event_log = "balanced_events.jsonl";
  std::string static_dir = "web/dist";
  bool no_fsync = false;
  app.add_option("--host", host, "Listen address")->envname("BALANCED_HOST");
  app.add_option("--port", port, "Listen port")->envname("BALANCED_PORT");
  app.add_option("--corpus", corpus, "Corpus file (one JSON article per line)")->required();
  app.add_option("--bias-map", bias_map, "source_domain,type_name CSV")->required();
  app.add_option("--config", config_path, "Session defaults (JSON)");
  app.add_option("--event-log", event_log, "Append-only session event log");
  app.add_option("--static-dir", static_dir, "UI bundle served under /");
  app.add_flag("--no-fsync", no_fsync, "Do not fsync the event log on append");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    balanced::SessionConfig config;
    if (!config_path.empty()) config = balanced::LoadSessionConfig(config_path);
    config.Validate();

    const balanced::BiasMapping mapping = balanced::LoadBiasMapping(bias_map, config.type_set());
    balanced::IngestionResult ingested = balanced::IngestFile(corpus, mapping);
    for (const std::string& w : ingested.warnings) std::cerr << "warning: " << w << '\n';
    std::cout << ingested.summary.ToLine() << std::endl;

    auto pools = std::make_shared<const balanced::TypePools>(std::move(ingested.pools));
    auto log = std::make_shared<balanced::FileEventLog>(event_log, !no_fsync);
    balanced::SessionManager sessions(config, pools, log);
    const std::size_t restored = sessions.Restore(*log);
    if (restored > 0) std::cout << "restored " << restored << " session(s)" << std::endl;

    balanced::ApiService service(sessions, static_dir);
    g_service = &service;
    std::signal(SIGINT, HandleSignal);
    std::signal(SIGTERM, HandleSignal);
    std::cout << "listening on http://" << host << ':' << port << std::endl;
    if (!service.Listen(host, port)) {
      std::cerr << "balanced_server: cannot listen on " << host << ':' << port << '\n';
      return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "balanced_server: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
