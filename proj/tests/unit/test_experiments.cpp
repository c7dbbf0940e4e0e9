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


#include "sqcqed/config.hpp"
#include "sqcqed/errors.hpp"
#include "sqcqed/experiments.hpp"

#include <doctest.h>

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>

using namespace sqcqed;

namespace {

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("sqcqed_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("golden section finds a parabola minimum") {
  const auto best = golden_section_minimum([](double x) { return (x - 1.3) * (x - 1.3) + 2.0; }, 0.0, 3.0, 1e-6);
  CHECK(best.Omega == doctest::Approx(1.3).epsilon(1e-5));
  CHECK(best.delta == doctest::Approx(2.0));
}

TEST_CASE("parallel_for visits every index and propagates errors") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 3, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
  CHECK_THROWS_AS(parallel_for(10, 2, [](std::size_t i) {
                    if (i == 7) throw InvalidArgument("boom");
                  }),
                  InvalidArgument);
}

TEST_CASE("fig2 table and summary") {
  RunConfig c;
  c.out_dir = scratch("fig2");
  const ExperimentResult r = run_experiment("fig2", c);
  REQUIRE(r.files.size() == 1);
  std::ifstream in(r.files[0]);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("r_p [1]") == 0);
  int rows = 0;
  std::string line;
  bool saw_three = false;
  while (std::getline(in, line)) {
    ++rows;
    double r_p = 0, ratio = 0;
    std::sscanf(line.c_str(), "%lf,%lf", &r_p, &ratio);
    CHECK(ratio == doctest::Approx(std::pow(std::cosh(r_p), 2)).epsilon(1e-10));
    if (std::abs(r_p - 3.0) < 1e-12) {
      saw_three = true;
      CHECK(ratio == doctest::Approx(101.35781806122793).epsilon(1e-10));
    }
  }
  CHECK(rows == c.fig2_points);
  CHECK(saw_three);
  const auto summary = nlohmann::json::parse(r.summary_json);
  CHECK(summary["experiment"] == "fig2");
  CHECK(summary["config"]["C"] == "20");
  CHECK(summary.contains("wall_clock_seconds"));
  CHECK(summary["results"]["max_cosh2_deviation"].get<double>() <= 1e-12);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("unsupported experiment requests") {
  RunConfig c;
  c.out_dir = scratch("bad");
  CHECK_THROWS_AS(run_experiment("fig9", c), ConfigError);
  c.variant = HamiltonianVariant::squeezed_full_cr;
  CHECK_THROWS_AS(run_experiment("fig3a", c), ConfigError);
  c.variant = HamiltonianVariant::lab_frame;
  CHECK_THROWS_AS(run_experiment("fig3a", c), ConfigError);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("small uncertainty run stays on the prediction") {
  RunConfig c;
  c.out_dir = scratch("uncertainty");
  c.uncertainty_n_s = {1};
  c.uncertainty_r_p = {0.5};
  c.uncertainty_samples = 10;
  const auto r = run_experiment("uncertainty", c);
  const auto summary = nlohmann::json::parse(r.summary_json);
  CHECK(summary["results"]["max_abs_deviation"].get<double>() <= 1e-7);
  CHECK(summary["results"]["min_product"].get<double>() >= 0.25 - 1e-9);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("small fig3a run writes curves and diagnostics") {
  RunConfig c;
  c.out_dir = scratch("fig3a");
  c.r_p = 1.0;
  c.n_max = 2;
  c.Omega_values = {0.5};
  c.t_final = 20.0;
  c.samples = 5;
  const auto r = run_experiment("fig3a", c);
  CHECK(r.files.size() == 2);
  const auto summary = nlohmann::json::parse(r.summary_json);
  const auto& d = summary["diagnostics"]["full_Omega_0.5"];
  CHECK(d["max_trace_drift"].get<double>() <= 1e-9);
  CHECK(d["accepted_steps"].get<long long>() > 0);
  std::filesystem::remove_all(c.out_dir);
}

TEST_CASE("validation skips the cancellation check for mismatched reservoirs") {
  RunConfig c;
  c.r_p = 1.0;
  c.r_e = 0.5;
  c.n_max = 2;
  c.validate_frame_equivalence = false;
  const ValidationReport report = run_validation(c);
  bool found = false;
  for (const auto& check : report.checks) {
    if (check.name == "noise_cancellation") {
      found = true;
      CHECK(check.status == ValidationCheck::Status::skipped);
    }
  }
  CHECK(found);
  const auto j = nlohmann::json::parse(report.to_json());
  CHECK(j["checks"].size() == report.checks.size());
}

TEST_CASE("validation flags an under-resolved Fock truncation") {
  RunConfig c;
  c.n_max = 1;
  c.validate_frame_equivalence = false;
  const ValidationReport report = run_validation(c);
  bool failed = false;
  for (const auto& check : report.checks) {
    if (check.name == "truncation_convergence") {
      failed = check.status == ValidationCheck::Status::fail;
      CHECK(check.measured > check.tolerance);
    }
  }
  CHECK(failed);
  CHECK_FALSE(report.passed());
}
