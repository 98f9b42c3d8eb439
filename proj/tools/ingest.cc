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

// Classifies a corpus against a bias mapping and prints the summary line.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "balanced/ingestion.h"
#include "balanced/session.h"

int main(int argc, char** argv) {
  CLI::App app{"Ingest a news corpus"};
  std::string corpus, bias_map, config_path;
  bool quiet = false;
  app.add_option("--corpus", corpus, "Corpus file")->required();
  app.add_option("--bias-map", bias_map, "Bias mapping CSV")->required();
  app.add_option("--config", config_path, "Session defaults naming the types");
  app.add_flag("-q,--quiet", quiet, "Suppress per-record warnings");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  try {
    balanced::SessionConfig config;
    if (!config_path.empty()) config = balanced::LoadSessionConfig(config_path);
    const auto mapping = balanced::LoadBiasMapping(bias_map, config.type_set());
    const auto result = balanced::IngestFile(corpus, mapping);
    if (!quiet) {
      for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
    }
    std::cout << result.summary.ToLine() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "ingest: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
