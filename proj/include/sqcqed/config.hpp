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

#pragma once

#include "sqcqed/lindblad.hpp"
#include "sqcqed/model.hpp"

#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace sqcqed {

/// Every knob of a run. Times are in units of 1/gamma and rates in units of
/// gamma. Defaults reproduce the figure settings: gamma_g = gamma_f = 1/2,
/// kappa = 2/3, C = 20, r_p = 3, theta_p = pi, matched reservoir squeezing.
struct RunConfig {
  std::string experiment = "fig3a";

  // Physical parameters.
  double gamma_g = 0.5;
  double gamma_f = 0.5;
  double kappa = 2.0 / 3.0;
  double C = 20.0;
  /// Bare coupling; when unset it follows from C = g^2 / (kappa gamma).
  std::optional<double> g;
  double Omega = 0.5;
  std::vector<double> Omega_values{0.5, 1.0, 1.5};
  /// Microwave Rabi frequency; when unset sqrt(2) Omega / 2^{7/4}.
  std::optional<double> Omega_MW;
  double r_p = 3.0;
  double theta_p = std::numbers::pi;
  /// Reservoir squeezing; when unset r_e = r_p and theta_e = pi - theta_p.
  std::optional<double> r_e;
  std::optional<double> theta_e;
  /// Optional parametric pump; when both are set r_p is derived from them.
  std::optional<double> Omega_p;
  std::optional<double> Delta_c;

  // Detunings.
  DetuningMode detuning_mode = DetuningMode::modified;
  /// Delta_e = Delta_e_factor |g'_s| (Delta_e_factor g when g'_s = 0) unless Delta_e is set.
  double Delta_e_factor = 200.0;
  std::optional<double> Delta_e;

  // Solver.
  HamiltonianVariant variant = HamiltonianVariant::time_averaged;
  int n_max = 4;
  StepperConfig::Method stepper = StepperConfig::Method::dopri5;
  /// Tighter than the StepperConfig defaults: the initial states are rank
  /// deficient and atol bounds the error that leaks into their null space,
  /// which shows up as negative eigenvalues of order 1e3 * atol.
  double atol = 1e-12;
  double rtol = 1e-8;
  double rk4_step = 1e-2;
  int threads = 0;

  // Time grid.
  double t_final = 500.0;
  int samples = 51;

  // fig2.
  double fig2_r_p_min = 0.0;
  double fig2_r_p_max = 4.0;
  int fig2_points = 41;

  // fig3b.
  double fig3b_C_min = 1.0;
  double fig3b_C_max = 100.0;
  int fig3b_C_points = 40;
  double fig3b_Omega_min = 0.1;
  double fig3b_Omega_max = 3.0;
  int fig3b_Omega_points = 40;
  double fig3b_t_eval = 200.0;
  double fig3b_optimum_tol = 1e-3;

  // figS2.
  std::vector<double> figS2_r_p_values{0.0, 0.25, 0.5, 0.75, 1.0, 1.25, 1.5,
                                       1.75, 2.0, 2.25, 2.5, 2.75, 3.0};
  bool figS2_full_model = true;

  // figS3 slow path.
  bool slow_path = false;
  double slow_t_final = 50.0;
  int slow_samples = 11;

  // uncertainty.
  std::vector<double> uncertainty_n_s{0, 1, 2};
  std::vector<double> uncertainty_r_p{0, 1, 2};
  /// Final time in units of 1/kappa.
  double uncertainty_t_final_kappa = 5.0;
  int uncertainty_samples = 50;

  // validate.
  bool validate_frame_equivalence = true;
  unsigned validation_seed = 12345;

  std::filesystem::path out_dir = "results";

  /// Resolved reservoir parameters.
  double resolved_r_e() const;
  double resolved_theta_e() const;
  /// r_p after resolving an optional pump.
  double resolved_r_p() const;
  double resolved_g() const;
  double resolved_Omega_MW(double Omega) const;

  /// Physical parameters for drive strength Omega with the given detuning
  /// mode and variant defaults.
  SystemParams system_params(double Omega, DetuningMode mode) const;
  SystemParams system_params(double Omega) const { return system_params(Omega, detuning_mode); }
  StepperConfig stepper_config() const;
  std::vector<double> time_grid(double t_end, int points) const;

  /// Throws ConfigError when a value is out of range.
  void validate() const;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown keys and
/// malformed values raise ConfigError. Keys left out keep their defaults.
RunConfig parse_config(const std::string& text, RunConfig base = {});
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Sets one key from its textual value (same rules as the file format).
void apply_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Ordered key -> textual value map. Feeding the output back into
/// parse_config reproduces the configuration exactly.
std::map<std::string, std::string> config_to_map(const RunConfig& config);
std::string serialize_config(const RunConfig& config);

/// Round-trip formatting for doubles ("%.17g").
std::string format_double(double v);

}  // namespace sqcqed
