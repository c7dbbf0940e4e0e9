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

#include "sqcqed/config.hpp"
#include "sqcqed/effective.hpp"
#include "sqcqed/lindblad.hpp"
#include "sqcqed/model.hpp"

#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

namespace sqcqed {

// ---------------------------------------------------------------------------
// Building blocks shared by the figure runs and the acceptance suite.

struct InfidelityCurve {
  std::vector<double> times;
  std::vector<double> delta;
  /// 1 - <psi_minus, 0|rho|psi_minus, 0> (equal to delta for the effective model).
  std::vector<double> delta_strict;
  TrajectoryDiagnostics diagnostics;
};

/// Closed-form effective model at resonant detunings started from
/// (I - |psi_minus><psi_minus|)/3.
InfidelityCurve effective_infidelity(const SystemParams& params, const std::vector<double>& times,
                                     const StepperConfig& stepper = {});

/// Full master equation of the given variant (squeezed-frame collapse set)
/// started from (I - |psi_minus><psi_minus|)/3 on the atoms and the mode vacuum.
InfidelityCurve full_infidelity(const SystemParams& params, HamiltonianVariant variant, int n_max,
                                const std::vector<double>& times, const StepperConfig& stepper = {});

/// Steady-state singlet infidelity of the closed-form effective model (nullspace).
double effective_steady_infidelity(const SystemParams& params);
/// Steady-state infidelity of the full static model (nullspace).
double full_steady_infidelity(const SystemParams& params, HamiltonianVariant variant, int n_max);

struct OptimalDrive {
  double Omega;
  double delta;
};

/// Golden-section minimum of `objective` on [lo, hi] to within `tol`.
OptimalDrive golden_section_minimum(const std::function<double(double)>& objective, double lo,
                                    double hi, double tol);

/// Runs fn(i) for i in [0, count) on `threads` workers (0 = hardware
/// concurrency). Exceptions are rethrown on the calling thread.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Lab frame (bare mode, squeezed reservoir) against the squeezed frame
/// (vacuum reservoir) at matched reservoir squeezing.
struct FrameOracleSettings {
  double r_p = 0.5;
  double theta_p = std::numbers::pi;
  double g = 0.5;
  double kappa = 1.0;
  double gamma_g = 0.5;
  double gamma_f = 0.5;
  double Omega = 0.5;
  double Delta_e = 50.0;
  int n_max_lab = 16;
  int n_max_squeezed = 4;
  double t_final = 50.0;
  int samples = 11;
};

struct FrameOracleResult {
  /// Largest difference of the per-atom populations of g, f, e over the grid.
  double max_population_difference = 0.0;
  TrajectoryDiagnostics lab;
  TrajectoryDiagnostics squeezed;
};

FrameOracleResult frame_equivalence(const FrameOracleSettings& settings,
                                    const StepperConfig& stepper = {});

/// Largest elementwise difference between numeric elimination and the closed
/// forms (H_eff and every L_eff). corrected = false compares squeezed_rwa at
/// the given detunings; corrected = true compares time_averaged.
double effective_equivalence_residual(const SystemParams& params, bool corrected);

/// Random parameter sets in the perturbative regime (Omega / g_s <= 0.05) at
/// resonant detunings.
std::vector<SystemParams> random_elimination_params(unsigned seed, int count);

// ---------------------------------------------------------------------------
// Figure runs.

struct ExperimentResult {
  std::string name;
  std::vector<std::filesystem::path> files;
  std::filesystem::path summary_path;
  /// Summary document as JSON text (also written to summary_path).
  std::string summary_json;
};

/// Runs fig2, fig3a, fig3b, figS2, figS3 or uncertainty and writes CSV tables
/// plus a JSON summary into config.out_dir.
ExperimentResult run_experiment(const std::string& name, const RunConfig& config);

std::vector<std::string> experiment_names();

// ---------------------------------------------------------------------------
// Validation.

struct ValidationCheck {
  enum class Status { pass, fail, skipped };
  std::string module;
  std::string name;
  Status status = Status::pass;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
  std::string to_json() const;
};

/// Executes the invariant suites of every module at the configured parameters.
ValidationReport run_validation(const RunConfig& config);

std::string to_string(ValidationCheck::Status status);

}  // namespace sqcqed
