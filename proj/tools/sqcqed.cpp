// Copyright 2026 The sqcqed Authors
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


// Command-line front end:
//   sqcqed run <experiment> [--config FILE] [--out DIR] [--slow-path] [--nmax N]
//   sqcqed validate [--config FILE] [--out DIR]
//
// Exit codes: 0 success, 1 failed validation or runtime error, 2 bad input.

#include "sqcqed/config.hpp"
#include "sqcqed/errors.hpp"
#include "sqcqed/experiments.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

sqcqed::RunConfig load(const std::string& path) {
  return path.empty() ? sqcqed::RunConfig{} : sqcqed::load_config(path);
}

int run(const std::string& experiment, const std::string& config_path, const std::string& out,
        bool slow_path, int n_max) {
  sqcqed::RunConfig config = load(config_path);
  if (!out.empty()) config.out_dir = out;
  if (slow_path) config.slow_path = true;
  if (n_max > 0) config.n_max = n_max;
  const auto result = sqcqed::run_experiment(experiment, config);
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
  std::cout << "wrote " << result.summary_path.string() << "\n";
  return 0;
}

int validate(const std::string& config_path, const std::string& out) {
  const sqcqed::RunConfig config = load(config_path);
  const sqcqed::ValidationReport report = sqcqed::run_validation(config);
  for (const auto& c : report.checks) {
    std::printf("%-8s %-12s %-36s measured=%.3e tol=%.1e %s\n", sqcqed::to_string(c.status).c_str(),
                c.module.c_str(), c.name.c_str(), c.measured, c.tolerance, c.detail.c_str());
  }
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream(std::filesystem::path(out) / "validation.json") << report.to_json() << "\n";
  }
  std::printf("validation %s\n", report.passed() ? "passed" : "FAILED");
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezing-enhanced cavity-QED entanglement simulator"};
  app.require_subcommand(1);

  std::string experiment, config_path, out;
  bool slow_path = false;
  int n_max = 0;

  auto* run_cmd = app.add_subcommand("run", "Run one figure experiment");
  run_cmd->add_option("experiment", experiment, "fig2, fig3a, fig3b, figS2, figS3 or uncertainty")
      ->required();
  run_cmd->add_option("--config", config_path, "Configuration file (key = value)");
  run_cmd->add_option("--out", out, "Output directory");
  run_cmd->add_flag("--slow-path", slow_path, "Include the full counter-rotating model");
  run_cmd->add_option("--nmax", n_max, "Fock truncation")->check(CLI::PositiveNumber);

  auto* validate_cmd = app.add_subcommand("validate", "Run the invariant checks");
  validate_cmd->add_option("--config", config_path, "Configuration file (key = value)");
  validate_cmd->add_option("--out", out, "Directory for validation.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) return run(experiment, config_path, out, slow_path, n_max);
    return validate(config_path, out);
  } catch (const sqcqed::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const sqcqed::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  } catch (const sqcqed::ThresholdError& e) {
    std::cerr << "threshold error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
