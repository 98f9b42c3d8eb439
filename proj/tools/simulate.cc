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

// Headless scenario runner.
//
//   simulate --scenario fig3 --seed 7 --out fig3.csv --format csv
//
// Prints the run summary on stdout. Exits nonzero with a one-line reason on
// any failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "balanced/http_driver.h"
#include "balanced/simulator.h"

int main(int argc, char** argv) {
  CLI::App app{"Drive a balanced-news session with a scripted user"};
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::optional<std::size_t> iterations;
  std::string out;
  std::string format = "csv";
  std::string via_http;
  std::string scenario_dir = balanced::DefaultScenarioDir().string();
  app.add_option("--scenario", scenario_name, "Preset name or scenario file")->required();
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--iterations", iterations, "Override the scenario's iteration count");
  app.add_option("--out", out, "Output file")->required();
  app.add_option("--format", format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--via-http", via_http, "Drive a running service at this base URL");
  app.add_option("--scenario-dir", scenario_dir, "Directory holding preset scenarios");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    balanced::Scenario scenario = balanced::LoadScenario(scenario_name, scenario_dir);
    if (iterations) scenario.iterations = *iterations;
    const balanced::RunResult result =
        via_http.empty() ? balanced::RunScenario(scenario, seed)
                         : balanced::RunScenarioViaHttp(scenario, seed, via_http);
    balanced::Emit(result, out, *balanced::ParseOutputFormat(format));
    std::cout << "scenario=" << result.scenario << " seed=" << result.seed
              << " rows=" << result.rows.size() << ' ' << result.summary.ToLine() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "simulate: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
