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

#include "sqcqed/experiments.hpp"

#include "sqcqed/errors.hpp"
#include "sqcqed/observables.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

namespace sqcqed {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Building blocks

InfidelityCurve effective_infidelity(const SystemParams& params, const std::vector<double>& times,
                                     const StepperConfig& stepper) {
  const EffectiveModel model = closed_form_effective(params, false);
  InfidelityCurve out;
  out.diagnostics = evolve_observed(singlet_complement_ground_state(), times, model.hamiltonian(),
                                    model.dissipators(), stepper,
                                    [&](double t, const DensityMatrix& rho) {
                                      const Fidelity f = fidelity_singlet(rho);
                                      out.times.push_back(t);
                                      out.delta.push_back(f.delta);
                                      out.delta_strict.push_back(1.0 - f.strict);
                                    });
  return out;
}

InfidelityCurve full_infidelity(const SystemParams& params, HamiltonianVariant variant, int n_max,
                                const std::vector<double>& times, const StepperConfig& stepper) {
  const SpaceLayout layout(n_max);
  const HamiltonianModel H = build_hamiltonian(variant, params, layout);
  const CollapseVariant cv =
      variant == HamiltonianVariant::lab_frame ? CollapseVariant::lab : CollapseVariant::squeezed;
  const DissipatorSet D = build_collapse_set(cv, params, layout);
  InfidelityCurve out;
  out.diagnostics = evolve_observed(singlet_complement_state(layout), times, H, D, stepper,
                                    [&](double t, const DensityMatrix& rho) {
                                      const Fidelity f = fidelity_singlet(rho);
                                      out.times.push_back(t);
                                      out.delta.push_back(f.delta);
                                      out.delta_strict.push_back(1.0 - f.strict);
                                    });
  return out;
}

double effective_steady_infidelity(const SystemParams& params) {
  const EffectiveModel model = closed_form_effective(params, false);
  return fidelity_singlet(steady_state(model.hamiltonian(), model.dissipators())).delta;
}

double full_steady_infidelity(const SystemParams& params, HamiltonianVariant variant, int n_max) {
  const SpaceLayout layout(n_max);
  const HamiltonianModel H = build_hamiltonian(variant, params, layout);
  const DissipatorSet D = build_collapse_set(CollapseVariant::squeezed, params, layout);
  return fidelity_singlet(steady_state(H, D)).delta;
}

OptimalDrive golden_section_minimum(const std::function<double(double)>& objective, double lo,
                                    double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }
  return fc < fd ? OptimalDrive{c, fc} : OptimalDrive{d, fd};
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

FrameOracleResult frame_equivalence(const FrameOracleSettings& s, const StepperConfig& stepper) {
  SystemParams p;
  p.g = s.g;
  p.kappa = s.kappa;
  p.gamma_g = s.gamma_g;
  p.gamma_f = s.gamma_f;
  p.Omega = s.Omega;
  p.Omega_MW = std::numbers::sqrt2 * s.Omega / std::pow(2.0, 1.75);
  p.squeeze.r_p = s.r_p;
  p.squeeze.theta_p = s.theta_p;
  p.squeeze.r_e = s.r_p;
  p.squeeze.theta_e = std::numbers::pi - s.theta_p;
  DetuningInputs in;
  in.Omega = s.Omega;
  in.Delta_e = s.Delta_e;
  in.r_p = s.r_p;
  in.theta_p = s.theta_p;
  in.g = s.g;
  p.detunings = resolve_detunings(DetuningMode::resonant, in);

  const std::vector<double> times = [&] {
    std::vector<double> t(static_cast<std::size_t>(s.samples));
    for (int i = 0; i < s.samples; ++i) t[static_cast<std::size_t>(i)] = s.t_final * i / (s.samples - 1);
    return t;
  }();

  auto populations = [](const DensityMatrix& rho) {
    const SpaceLayout& layout = *rho.layout();
    std::vector<double> pops;
    for (int k = 1; k <= 2; ++k) {
      for (Level z : {Level::g, Level::f, Level::e}) {
        pops.push_back(expectation(rho, embed_atom_op(k, z, z, layout)).real());
      }
    }
    return pops;
  };

  // Squeezed frame: vacuum reservoir for a_s, atoms start in (I - |S><S|)/3 with a_s vacuum.
  const SpaceLayout sq_layout(s.n_max_squeezed);
  std::vector<std::vector<double>> sq_pops;
  FrameOracleResult result;
  result.squeezed = evolve_observed(
      singlet_complement_state(sq_layout), times,
      build_hamiltonian(HamiltonianVariant::squeezed_rwa, p, sq_layout),
      build_collapse_set(CollapseVariant::squeezed, p, sq_layout), stepper,
      [&](double, const DensityMatrix& rho) { sq_pops.push_back(populations(rho)); });

  // Lab frame: bare mode in the squeezed vacuum, squeezed reservoir.
  const SpaceLayout lab_layout(s.n_max_lab);
  const CVector vac = squeezed_vacuum_amplitudes(s.n_max_lab, s.r_p, s.theta_p);
  const DensityMatrix atoms = singlet_complement_state(lab_layout);
  CMatrix rho0 = CMatrix::Zero(lab_layout.dim(), lab_layout.dim());
  // Replace the vacuum factor of the atomic mixture by the squeezed vacuum.
  for (int i = 0; i < lab_layout.dim(); ++i) {
    const auto li = lab_layout.labels(i);
    for (int j = 0; j < lab_layout.dim(); ++j) {
      const auto lj = lab_layout.labels(j);
      const Complex atomic =
          atoms.matrix()(lab_layout.index(li.z1, li.z2, 0), lab_layout.index(lj.z1, lj.z2, 0));
      if (atomic != Complex(0.0)) rho0(i, j) = atomic * vac[li.n] * std::conj(vac[lj.n]);
    }
  }
  std::size_t idx = 0;
  result.lab = evolve_observed(
      DensityMatrix(lab_layout, rho0), times,
      build_hamiltonian(HamiltonianVariant::lab_frame, p, lab_layout),
      build_collapse_set(CollapseVariant::lab, p, lab_layout), stepper,
      [&](double, const DensityMatrix& rho) {
        const auto pops = populations(rho);
        for (std::size_t k = 0; k < pops.size(); ++k) {
          result.max_population_difference =
              std::max(result.max_population_difference, std::abs(pops[k] - sq_pops[idx][k]));
        }
        ++idx;
      });
  return result;
}

double effective_equivalence_residual(const SystemParams& params, bool corrected) {
  const SpaceLayout layout(2);
  const HamiltonianVariant variant =
      corrected ? HamiltonianVariant::time_averaged : HamiltonianVariant::squeezed_rwa;
  const EliminationInputs in = elimination_inputs(params, layout, variant);
  const EffectiveModel numeric = reiter_sorensen(in.H_g, in.H_e, in.v_plus, in.D, in.beta);
  const EffectiveModel closed = closed_form_effective(params, corrected);
  double residual = max_abs(numeric.H_eff.matrix() - closed.H_eff.matrix());
  for (std::size_t i = 0; i < closed.L_eff.size(); ++i) {
    const auto it = std::find(numeric.labels.begin(), numeric.labels.end(), closed.labels[i]);
    if (it == numeric.labels.end()) throw InvalidArgument("missing effective operator " + closed.labels[i]);
    const auto j = static_cast<std::size_t>(it - numeric.labels.begin());
    residual = std::max(residual, max_abs(numeric.L_eff[j].matrix() - closed.L_eff[i].matrix()));
  }
  return residual;
}

std::vector<SystemParams> random_elimination_params(unsigned seed, int count) {
  std::mt19937 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::vector<SystemParams> out;
  for (int i = 0; i < count; ++i) {
    SystemParams p;
    p.gamma_g = uniform(0.2, 0.8);
    p.gamma_f = 1.0 - p.gamma_g;
    p.kappa = uniform(0.3, 2.0);
    const double C = uniform(5.0, 50.0);
    p.g = std::sqrt(C * p.kappa * p.gamma());
    p.squeeze.r_p = uniform(0.0, 3.0);
    p.squeeze.theta_p = std::numbers::pi;
    p.squeeze.r_e = p.squeeze.r_p;
    p.squeeze.theta_e = 0.0;
    const auto [g_s, g_sp] = bogoliubov_couplings(p.g, p.squeeze.r_p, p.squeeze.theta_p);
    p.Omega = uniform(0.2, 1.0) * 0.05 * g_s;
    p.Omega_MW = std::numbers::sqrt2 * p.Omega / std::pow(2.0, 1.75);
    DetuningInputs in;
    in.Omega = p.Omega;
    in.Delta_e = 200.0 * (std::abs(g_sp) > 0.0 ? std::abs(g_sp) : p.g);
    in.r_p = p.squeeze.r_p;
    in.theta_p = p.squeeze.theta_p;
    in.g = p.g;
    p.detunings = resolve_detunings(DetuningMode::resonant, in);
    out.push_back(p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output helpers

namespace {

class CsvTable {
 public:
  CsvTable(std::filesystem::path path, std::vector<std::string> columns)
      : path_(std::move(path)), columns_(std::move(columns)) {}

  void row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw InvalidArgument("csv row width mismatch");
    rows_.push_back(values);
  }

  std::filesystem::path write() const {
    std::ofstream out(path_);
    if (!out) throw Error("cannot write '" + path_.string() + "'");
    for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
    out << "\n";
    char buf[40];
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12e", r[i]);
        out << (i ? "," : "") << buf;
      }
      out << "\n";
    }
    return path_;
  }

 private:
  std::filesystem::path path_;
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

json diagnostics_json(const TrajectoryDiagnostics& d) {
  return {{"max_trace_drift", d.max_trace_drift},
          {"max_hermiticity_drift", d.max_hermiticity_drift},
          {"min_eigenvalue", d.min_eigenvalue},
          {"accepted_steps", d.accepted_steps},
          {"rejected_steps", d.rejected_steps},
          {"rhs_evaluations", d.rhs_evaluations}};
}

json params_json(const SystemParams& p) {
  const double r_p = p.squeeze.resolved_r_p();
  const auto [g_s, g_sp] = bogoliubov_couplings(p.g, r_p, p.squeeze.theta_p);
  const auto ns = effective_noise_moments(r_p, p.squeeze.theta_p, p.squeeze.r_e, p.squeeze.theta_e);
  return {{"g", p.g},
          {"kappa", p.kappa},
          {"gamma_g", p.gamma_g},
          {"gamma_f", p.gamma_f},
          {"Omega", p.Omega},
          {"Omega_MW", p.Omega_MW},
          {"r_p", r_p},
          {"theta_p", p.squeeze.theta_p},
          {"r_e", p.squeeze.r_e},
          {"theta_e", p.squeeze.theta_e},
          {"g_s", g_s},
          {"g_s_prime", {g_sp.real(), g_sp.imag()}},
          {"C", p.cooperativity()},
          {"C_s", p.squeezed_cooperativity()},
          {"N_s", ns.N},
          {"M_s", {ns.M.real(), ns.M.imag()}},
          {"detunings",
           {{"mode", to_string(p.detunings.mode)},
            {"Delta_e", p.detunings.Delta_e},
            {"Delta_f", p.detunings.Delta_f},
            {"Delta_f_prime", p.detunings.Delta_f_prime},
            {"beta", p.detunings.beta},
            {"omega_s", p.detunings.omega_s}}}};
}

const std::vector<std::string> param_columns = {
    "Omega [gamma]",   "Omega_MW [gamma]",   "Delta_e [gamma]", "Delta_f [gamma]",
    "Delta_f_prime [gamma]", "beta [gamma]", "omega_s [gamma]", "g [gamma]",
    "g_s [gamma]",     "g_s_prime_re [gamma]", "g_s_prime_im [gamma]", "C [1]",
    "C_s [1]"};

std::vector<double> param_values(const SystemParams& p) {
  const auto [g_s, g_sp] = bogoliubov_couplings(p.g, p.squeeze.resolved_r_p(), p.squeeze.theta_p);
  const Detunings& d = p.detunings;
  return {p.Omega, p.Omega_MW, d.Delta_e, d.Delta_f, d.Delta_f_prime, d.beta, d.omega_s, p.g,
          g_s,     g_sp.real(), g_sp.imag(), p.cooperativity(), p.squeezed_cooperativity()};
}

std::vector<std::string> with_params(std::vector<std::string> cols) {
  cols.insert(cols.end(), param_columns.begin() + 1, param_columns.end());
  return cols;
}

std::vector<double> with_params(std::vector<double> values, const SystemParams& p) {
  const auto extra = param_values(p);
  values.insert(values.end(), extra.begin() + 1, extra.end());
  return values;
}

void require_full_variant(const RunConfig& config, HamiltonianVariant v) {
  if (v == HamiltonianVariant::lab_frame) {
    throw ConfigError("variant lab_frame is reserved for the frame-equivalence check");
  }
  if (v == HamiltonianVariant::squeezed_full_cr && !config.slow_path) {
    throw ConfigError("variant squeezed_full_cr requires the slow-path flag");
  }
}

struct RunContext {
  const RunConfig& config;
  json results = json::object();
  json diagnostics = json::object();
  std::vector<std::filesystem::path> files;

  std::filesystem::path path(const std::string& file) const { return config.out_dir / file; }
};

void run_fig2(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  CsvTable table(ctx.path("fig2.csv"), {"r_p [1]", "C_s_over_C [1]", "g_s_over_g [1]",
                                        "g_s_prime_over_g [1]", "asymptote_exp2r_over_4 [1]",
                                        "asymptote_rel_error [1]", "C_s_at_C [1]"});
  double worst_identity = 0.0;
  for (int i = 0; i < c.fig2_points; ++i) {
    const double r = c.fig2_r_p_min + (c.fig2_r_p_max - c.fig2_r_p_min) * i / (c.fig2_points - 1);
    SystemParams p;
    p.g = 1.0;
    p.kappa = 1.0;
    p.gamma_g = 0.5;
    p.gamma_f = 0.5;
    p.squeeze.r_p = r;
    const double ratio = p.squeezed_cooperativity() / p.cooperativity();
    const auto [g_s, g_sp] = bogoliubov_couplings(1.0, r, c.theta_p);
    const double asym = std::exp(2.0 * r) / 4.0;
    worst_identity = std::max(worst_identity, std::abs(ratio - std::cosh(r) * std::cosh(r)));
    table.row({r, ratio, g_s, std::abs(g_sp), asym, std::abs(asym - ratio) / ratio, c.C * ratio});
  }
  ctx.files.push_back(table.write());
  ctx.results["max_cosh2_deviation"] = worst_identity;
  if (c.C < 1.0) {
    // C_s = C cosh^2 r_p crosses 1 at r_p = acosh(1 / sqrt C).
    ctx.results["strong_coupling_threshold_r_p"] = std::acosh(1.0 / std::sqrt(c.C));
  }
}

void run_fig3a(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  require_full_variant(c, c.variant);
  const auto times = c.time_grid(c.t_final, c.samples);
  const auto stepper = c.stepper_config();
  const std::size_t n = c.Omega_values.size();
  std::vector<InfidelityCurve> eff(n), full(n);
  std::vector<SystemParams> params(n);
  parallel_for(n, c.threads, [&](std::size_t i) {
    const double Om = c.Omega_values[i];
    params[i] = c.system_params(Om);
    eff[i] = effective_infidelity(c.system_params(Om, DetuningMode::resonant), times, stepper);
    full[i] = full_infidelity(params[i], c.variant, c.n_max, times, stepper);
  });

  const double C = params.front().cooperativity();
  const double r_p = params.front().squeeze.resolved_r_p();
  const double asym = 3.0 * (c.gamma_g + c.gamma_f) / (c.gamma_g * std::exp(2.0 * r_p) * C);
  CsvTable curves(ctx.path("fig3a.csv"),
                  {"Omega [gamma]", "t [1/gamma]", "delta_effective [1]", "delta_full [1]",
                   "delta_full_strict [1]", "ref_asymptote [1]", "ref_inv_sqrt_C [1]",
                   "ref_inv_C [1]"});
  CsvTable pars(ctx.path("fig3a_params.csv"),
                [] {
                  auto cols = param_columns;
                  cols.insert(cols.end(), {"delta_pred [1]", "Gamma_in [gamma]", "Gamma_out [gamma]"});
                  return cols;
                }());
  json per_omega = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    double max_gap = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      curves.row({c.Omega_values[i], times[k], eff[i].delta[k], full[i].delta[k],
                  full[i].delta_strict[k], asym, 1.0 / std::sqrt(C), 1.0 / C});
      max_gap = std::max(max_gap, std::abs(eff[i].delta[k] - full[i].delta[k]));
    }
    const RateSummary rs = rates(c.system_params(c.Omega_values[i], DetuningMode::resonant));
    auto row = param_values(params[i]);
    row.insert(row.end(), {rs.delta_pred, rs.Gamma_in, rs.Gamma_out});
    pars.row(row);
    per_omega.push_back({{"Omega", c.Omega_values[i]},
                         {"final_delta_effective", eff[i].delta.back()},
                         {"final_delta_full", full[i].delta.back()},
                         {"max_abs_difference", max_gap},
                         {"delta_pred", rs.delta_pred}});
    ctx.diagnostics["full_Omega_" + format_double(c.Omega_values[i])] = diagnostics_json(full[i].diagnostics);
    ctx.diagnostics["effective_Omega_" + format_double(c.Omega_values[i])] =
        diagnostics_json(eff[i].diagnostics);
  }
  ctx.files.push_back(curves.write());
  ctx.files.push_back(pars.write());
  ctx.results["per_Omega"] = per_omega;
  ctx.results["ref_asymptote"] = asym;
  ctx.results["variant"] = to_string(c.variant);
}

// Infidelity of the effective model at time t for cooperativity C and drive Om.
double fig3b_delta(const RunConfig& c, double C, double Om) {
  RunConfig local = c;
  local.C = C;
  local.g.reset();
  const auto curve = effective_infidelity(local.system_params(Om, DetuningMode::resonant),
                                          {0.0, c.fig3b_t_eval}, c.stepper_config());
  return curve.delta.back();
}

void run_fig3b(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  const int nc = c.fig3b_C_points, no = c.fig3b_Omega_points;
  std::vector<double> Cs(static_cast<std::size_t>(nc)), Oms(static_cast<std::size_t>(no));
  for (int i = 0; i < nc; ++i) Cs[i] = c.fig3b_C_min + (c.fig3b_C_max - c.fig3b_C_min) * i / (nc - 1);
  for (int j = 0; j < no; ++j) {
    Oms[j] = c.fig3b_Omega_min + (c.fig3b_Omega_max - c.fig3b_Omega_min) * j / (no - 1);
  }
  std::vector<double> grid(static_cast<std::size_t>(nc * no));
  parallel_for(grid.size(), c.threads, [&](std::size_t k) {
    grid[k] = fig3b_delta(c, Cs[k / no], Oms[k % no]);
  });

  std::vector<OptimalDrive> best(static_cast<std::size_t>(nc));
  parallel_for(best.size(), c.threads, [&](std::size_t i) {
    const auto first = grid.begin() + static_cast<std::ptrdiff_t>(i * no);
    const auto j = static_cast<int>(std::min_element(first, first + no) - first);
    // Bracket the grid minimum by its neighbours and refine.
    const double lo = Oms[std::max(j - 1, 0)];
    const double hi = Oms[std::min(j + 1, no - 1)];
    best[i] = golden_section_minimum([&](double Om) { return fig3b_delta(c, Cs[i], Om); }, lo, hi,
                                     c.fig3b_optimum_tol);
  });

  CsvTable table(ctx.path("fig3b_grid.csv"),
                 {"C [1]", "Omega [gamma]", "t [1/gamma]", "delta [1]", "g [gamma]", "g_s [gamma]", "C_s [1]"});
  for (int i = 0; i < nc; ++i) {
    RunConfig local = c;
    local.C = Cs[i];
    local.g.reset();
    const SystemParams p = local.system_params(Oms[0], DetuningMode::resonant);
    const double g_s = bogoliubov_couplings(p.g, p.squeeze.resolved_r_p(), p.squeeze.theta_p).g_s;
    for (int j = 0; j < no; ++j) {
      table.row({Cs[i], Oms[j], c.fig3b_t_eval, grid[static_cast<std::size_t>(i * no + j)], p.g, g_s,
                 p.squeezed_cooperativity()});
    }
  }
  CsvTable opt(ctx.path("fig3b_optimum.csv"),
               {"C [1]", "Omega_opt [gamma]", "delta_opt [1]", "t [1/gamma]", "C_s [1]"});
  for (int i = 0; i < nc; ++i) {
    const double Cs_val = Cs[i] * std::pow(std::cosh(c.resolved_r_p()), 2);
    opt.row({Cs[i], best[i].Omega, best[i].delta, c.fig3b_t_eval, Cs_val});
  }
  ctx.files.push_back(table.write());
  ctx.files.push_back(opt.write());

  // The realistic-parameter point C = 42.
  const OptimalDrive at42 = golden_section_minimum(
      [&](double Om) { return fig3b_delta(c, 42.0, Om); }, c.fig3b_Omega_min, c.fig3b_Omega_max,
      c.fig3b_optimum_tol);
  ctx.results["C42_optimum"] = {{"Omega", at42.Omega}, {"delta", at42.delta}};
  ctx.results["grid_min_delta"] = *std::min_element(grid.begin(), grid.end());
}

void run_figS2(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  if (c.figS2_full_model) require_full_variant(c, c.variant);
  if (c.figS2_full_model && c.variant == HamiltonianVariant::squeezed_full_cr) {
    throw ConfigError("figS2 steady states need a static variant");
  }
  const std::size_t nr = c.figS2_r_p_values.size();
  const std::size_t n = c.Omega_values.size() * nr;
  struct Point {
    SystemParams p;
    double eff = 0, full = 0;
    RateSummary rs;
  };
  std::vector<Point> pts(n);
  parallel_for(n, c.threads, [&](std::size_t k) {
    RunConfig local = c;
    local.r_p = c.figS2_r_p_values[k % nr];
    local.r_e.reset();
    local.Omega_p.reset();
    local.Delta_c.reset();
    const double Om = c.Omega_values[k / nr];
    const SystemParams pe = local.system_params(Om, DetuningMode::resonant);
    pts[k].p = local.system_params(Om);
    pts[k].eff = effective_steady_infidelity(pe);
    pts[k].rs = rates(pe);
    pts[k].full = c.figS2_full_model ? full_steady_infidelity(pts[k].p, c.variant, c.n_max)
                                     : std::numeric_limits<double>::quiet_NaN();
  });
  CsvTable table(ctx.path("figS2.csv"),
                 with_params({"Omega [gamma]", "r_p [1]", "delta_effective_steady [1]",
                              "delta_full_steady [1]", "delta_pred [1]", "delta_asym_Cs [1]"}));
  json summary = json::array();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& pt = pts[k];
    table.row(with_params({pt.p.Omega, c.figS2_r_p_values[k % nr], pt.eff, pt.full, pt.rs.delta_pred,
                           pt.rs.delta_asym_Cs},
                          pt.p));
    summary.push_back({{"Omega", pt.p.Omega},
                       {"r_p", c.figS2_r_p_values[k % nr]},
                       {"delta_effective", pt.eff},
                       {"delta_full", pt.full},
                       {"delta_asym_Cs", pt.rs.delta_asym_Cs}});
  }
  ctx.files.push_back(table.write());
  ctx.results["points"] = summary;
}

void run_figS3(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  const auto times = c.time_grid(c.t_final, c.samples);
  const auto stepper = c.stepper_config();
  const std::size_t n = c.Omega_values.size();
  const auto ta = HamiltonianVariant::time_averaged;
  std::vector<InfidelityCurve> eff(n), unmod(n), mod(n);
  parallel_for(3 * n, c.threads, [&](std::size_t k) {
    const std::size_t i = k / 3;
    const double Om = c.Omega_values[i];
    switch (k % 3) {
      case 0: eff[i] = effective_infidelity(c.system_params(Om, DetuningMode::resonant), times, stepper); break;
      case 1: unmod[i] = full_infidelity(c.system_params(Om, DetuningMode::resonant), ta, c.n_max, times, stepper); break;
      default: mod[i] = full_infidelity(c.system_params(Om, DetuningMode::modified), ta, c.n_max, times, stepper); break;
    }
  });
  CsvTable table(ctx.path("figS3.csv"), {"Omega [gamma]", "t [1/gamma]", "delta_effective [1]",
                                         "delta_unmodified [1]", "delta_modified [1]"});
  json per_omega = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    double gap = 0.0;
    for (std::size_t k = 0; k < times.size(); ++k) {
      table.row({c.Omega_values[i], times[k], eff[i].delta[k], unmod[i].delta[k], mod[i].delta[k]});
      gap = std::max(gap, std::abs(mod[i].delta[k] - eff[i].delta[k]));
    }
    per_omega.push_back({{"Omega", c.Omega_values[i]},
                         {"final_delta_effective", eff[i].delta.back()},
                         {"final_delta_unmodified", unmod[i].delta.back()},
                         {"final_delta_modified", mod[i].delta.back()},
                         {"max_abs_modified_minus_effective", gap}});
    const std::string key = format_double(c.Omega_values[i]);
    ctx.diagnostics["unmodified_Omega_" + key] = diagnostics_json(unmod[i].diagnostics);
    ctx.diagnostics["modified_Omega_" + key] = diagnostics_json(mod[i].diagnostics);
  }
  ctx.files.push_back(table.write());
  ctx.results["per_Omega"] = per_omega;

  if (!c.slow_path) {
    ctx.results["slow_path"] = "not run";
    return;
  }
  const auto slow_times = c.time_grid(c.slow_t_final, c.slow_samples);
  std::vector<InfidelityCurve> cr(n), avg(n);
  parallel_for(2 * n, c.threads, [&](std::size_t k) {
    const std::size_t i = k / 2;
    const SystemParams p = c.system_params(c.Omega_values[i], DetuningMode::modified);
    if (k % 2 == 0) {
      cr[i] = full_infidelity(p, HamiltonianVariant::squeezed_full_cr, c.n_max, slow_times, stepper);
    } else {
      avg[i] = full_infidelity(p, ta, c.n_max, slow_times, stepper);
    }
  });
  CsvTable slow(ctx.path("figS3_full_cr.csv"), {"Omega [gamma]", "t [1/gamma]", "delta_full_cr [1]",
                                                "delta_time_averaged [1]", "abs_difference [1]"});
  json slow_summary = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    double gap = 0.0;
    for (std::size_t k = 0; k < slow_times.size(); ++k) {
      const double diff = std::abs(cr[i].delta[k] - avg[i].delta[k]);
      gap = std::max(gap, diff);
      slow.row({c.Omega_values[i], slow_times[k], cr[i].delta[k], avg[i].delta[k], diff});
    }
    slow_summary.push_back({{"Omega", c.Omega_values[i]}, {"max_abs_difference", gap}});
    ctx.diagnostics["full_cr_Omega_" + format_double(c.Omega_values[i])] = diagnostics_json(cr[i].diagnostics);
  }
  ctx.files.push_back(slow.write());
  ctx.results["slow_path"] = slow_summary;
}

void run_uncertainty(RunContext& ctx) {
  const RunConfig& c = ctx.config;
  const std::size_t nn = c.uncertainty_n_s.size(), nr = c.uncertainty_r_p.size();
  struct Series {
    std::vector<double> t, v1, v2, prod;
    TrajectoryDiagnostics diag;
  };
  std::vector<Series> series(nn * nr);
  const auto times = c.time_grid(c.uncertainty_t_final_kappa / c.kappa, c.uncertainty_samples);
  parallel_for(series.size(), c.threads, [&](std::size_t k) {
    const int n_s = static_cast<int>(c.uncertainty_n_s[k / nr]);
    const double r = c.uncertainty_r_p[k % nr];
    const SpaceLayout layout(std::max(c.n_max, n_s + 4));
    // Cavity-only model in the frame rotating with the squeezed mode.
    const HamiltonianModel H{Operator::zero(layout), {}};
    const DissipatorSet D{DissipatorTerm::standard(std::sqrt(c.kappa) * annihilation(layout), "L_as")};
    const auto rho0 = DensityMatrix::pure(layout, basis_ket(layout, Level::g, Level::g, n_s));
    Series& s = series[k];
    s.diag = evolve_observed(rho0, times, H, D, c.stepper_config(), [&](double t, const DensityMatrix& rho) {
      const QuadratureStats q = quadrature_stats(rho, r, c.theta_p);
      s.t.push_back(t);
      s.v1.push_back(q.var_X1);
      s.v2.push_back(q.var_X2);
      s.prod.push_back(q.product);
    });
  });
  CsvTable table(ctx.path("uncertainty.csv"),
                 {"n_s [1]", "r_p [1]", "t [1/gamma]", "kappa_t [1]", "var_X1_sim [1]", "var_X2_sim [1]",
                  "product_sim [1]", "var_X1_pred [1]", "var_X2_pred [1]", "product_pred [1]"});
  double worst = 0.0, min_product = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < series.size(); ++k) {
    const int n_s = static_cast<int>(c.uncertainty_n_s[k / nr]);
    const double r = c.uncertainty_r_p[k % nr];
    const Series& s = series[k];
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      const QuadratureStats pred = uncertainty_prediction(n_s, c.kappa, s.t[i], r);
      worst = std::max({worst, std::abs(s.v1[i] - pred.var_X1), std::abs(s.v2[i] - pred.var_X2),
                        std::abs(s.prod[i] - pred.product)});
      min_product = std::min(min_product, s.prod[i]);
      table.row({static_cast<double>(n_s), r, s.t[i], c.kappa * s.t[i], s.v1[i], s.v2[i], s.prod[i],
                 pred.var_X1, pred.var_X2, pred.product});
    }
  }
  ctx.files.push_back(table.write());
  ctx.results["max_abs_deviation"] = worst;
  ctx.results["min_product"] = min_product;
}

}  // namespace

std::vector<std::string> experiment_names() {
  return {"fig2", "fig3a", "fig3b", "figS2", "figS3", "uncertainty"};
}

ExperimentResult run_experiment(const std::string& name, const RunConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  RunContext ctx{config, json::object(), json::object(), {}};
  std::filesystem::create_directories(config.out_dir);

  if (name == "fig2") {
    run_fig2(ctx);
  } else if (name == "fig3a") {
    run_fig3a(ctx);
  } else if (name == "fig3b") {
    run_fig3b(ctx);
  } else if (name == "figS2") {
    run_figS2(ctx);
  } else if (name == "figS3") {
    run_figS3(ctx);
  } else if (name == "uncertainty") {
    run_uncertainty(ctx);
  } else {
    throw ConfigError("unknown experiment '" + name + "'");
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  RunConfig resolved = config;
  resolved.experiment = name;
  json summary = {{"experiment", name},
                  {"config", config_to_map(resolved)},
                  {"derived", params_json(config.system_params(config.Omega))},
                  {"results", ctx.results},
                  {"diagnostics", ctx.diagnostics},
                  {"wall_clock_seconds", seconds},
                  {"units", {{"time", "1/gamma"}, {"rate", "gamma"}}}};
  json files = json::array();
  for (const auto& f : ctx.files) files.push_back(f.filename().string());
  summary["files"] = files;

  ExperimentResult result;
  result.name = name;
  result.files = ctx.files;
  result.summary_path = config.out_dir / (name + "_summary.json");
  result.summary_json = summary.dump(2);
  std::ofstream out(result.summary_path);
  if (!out) throw Error("cannot write '" + result.summary_path.string() + "'");
  out << result.summary_json << "\n";
  return result;
}

// ---------------------------------------------------------------------------
// Validation

std::string to_string(ValidationCheck::Status status) {
  switch (status) {
    case ValidationCheck::Status::pass: return "pass";
    case ValidationCheck::Status::fail: return "fail";
    case ValidationCheck::Status::skipped: return "skipped";
  }
  return "unknown";
}

bool ValidationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const ValidationCheck& c) {
    return c.status == ValidationCheck::Status::fail;
  });
}

std::string ValidationReport::to_json() const {
  json list = json::array();
  for (const auto& c : checks) {
    list.push_back({{"module", c.module},
                    {"name", c.name},
                    {"status", to_string(c.status)},
                    {"measured", c.measured},
                    {"tolerance", c.tolerance},
                    {"detail", c.detail}});
  }
  return json{{"passed", passed()}, {"checks", list}}.dump(2);
}

namespace {

class Validator {
 public:
  explicit Validator(ValidationReport& report) : report_(report) {}

  // measured <= tolerance passes.
  void upper(const std::string& module, const std::string& name, double measured, double tol,
             const std::string& detail = {}) {
    push(module, name, measured <= tol ? ValidationCheck::Status::pass : ValidationCheck::Status::fail,
         measured, tol, detail);
  }
  // measured >= tolerance passes.
  void lower(const std::string& module, const std::string& name, double measured, double tol,
             const std::string& detail = {}) {
    push(module, name, measured >= tol ? ValidationCheck::Status::pass : ValidationCheck::Status::fail,
         measured, tol, detail);
  }
  void skip(const std::string& module, const std::string& name, const std::string& detail) {
    push(module, name, ValidationCheck::Status::skipped, 0.0, 0.0, detail);
  }
  // Runs body; an exception is recorded as a failure of that check.
  void guarded(const std::string& module, const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      push(module, name, ValidationCheck::Status::fail, std::numeric_limits<double>::quiet_NaN(), 0.0,
           std::string("exception: ") + e.what());
    }
  }

 private:
  void push(const std::string& module, const std::string& name, ValidationCheck::Status s,
            double measured, double tol, const std::string& detail) {
    report_.checks.push_back({module, name, s, measured, tol, detail});
  }
  ValidationReport& report_;
};

CMatrix random_state(std::mt19937& rng, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMatrix A(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) A(i, j) = Complex(n(rng), n(rng));
  }
  CMatrix rho = A * A.adjoint();
  return rho / rho.trace();
}

bool odd_multiple_of_pi(double phase) {
  const double k = phase / std::numbers::pi;
  const double nearest = std::round(k);
  return std::abs(k - nearest) < 1e-12 && static_cast<long long>(nearest) % 2 != 0;
}

}  // namespace

ValidationReport run_validation(const RunConfig& config) {
  config.validate();
  ValidationReport report;
  Validator v(report);
  std::mt19937 rng(config.validation_seed);
  const SpaceLayout layout(config.n_max);
  const SystemParams params = config.system_params(config.Omega);
  const SystemParams resonant = config.system_params(config.Omega, DetuningMode::resonant);

  // hilbert
  v.guarded("hilbert", "index_bijection", [&] {
    int mismatches = 0;
    for (int i = 0; i < layout.dim(); ++i) {
      const auto l = layout.labels(i);
      if (layout.index(l.z1, l.z2, l.n) != i) ++mismatches;
    }
    v.upper("hilbert", "index_bijection", mismatches, 0.0);
  });
  v.guarded("hilbert", "embed_adjoint", [&] {
    double worst = 0.0;
    for (int k = 1; k <= 2; ++k) {
      for (Level a : {Level::g, Level::f, Level::e}) {
        for (Level b : {Level::g, Level::f, Level::e}) {
          worst = std::max(worst, max_abs(embed_atom_op(k, a, b, layout).adjoint().matrix() -
                                          embed_atom_op(k, b, a, layout).matrix()));
        }
      }
    }
    v.upper("hilbert", "embed_adjoint", worst, 0.0);
  });
  v.guarded("hilbert", "factor_locality", [&] {
    double worst = 0.0;
    const Operator a = annihilation(layout);
    for (Level x : {Level::g, Level::f, Level::e}) {
      for (Level y : {Level::g, Level::f, Level::e}) {
        const Operator o1 = embed_atom_op(1, x, y, layout);
        worst = std::max(worst, max_abs(commutator(o1, embed_atom_op(2, y, x, layout)).matrix()));
        worst = std::max(worst, max_abs(commutator(o1, a).matrix()));
      }
    }
    v.upper("hilbert", "factor_locality", worst, 1e-14);
  });

  // model
  v.guarded("model", "static_hermitian", [&] {
    double worst = 0.0;
    for (auto var : {HamiltonianVariant::lab_frame, HamiltonianVariant::squeezed_rwa,
                     HamiltonianVariant::squeezed_full_cr, HamiltonianVariant::time_averaged}) {
      worst = std::max(worst, build_hamiltonian(var, params, layout).static_part.hermiticity_defect());
    }
    v.upper("model", "static_hermitian", worst, 1e-12);
  });
  v.guarded("model", "hyperbolic_identity", [&] {
    const auto [g_s, g_sp] = bogoliubov_couplings(params.g, params.squeeze.resolved_r_p(), params.squeeze.theta_p);
    const double rel = std::abs(g_s * g_s - std::norm(g_sp) - params.g * params.g) /
                       std::max(1.0, params.g * params.g);
    v.upper("model", "hyperbolic_identity", rel, 1e-12, "relative to g^2");
  });
  v.guarded("model", "noise_minimum_uncertainty", [&] {
    const auto& sq = params.squeeze;
    const auto m = effective_noise_moments(sq.resolved_r_p(), sq.theta_p, sq.r_e, sq.theta_e);
    const double scale = std::max(1.0, m.N * (m.N + 1.0));
    v.upper("model", "noise_minimum_uncertainty", std::abs(std::norm(m.M) - m.N * (m.N + 1.0)) / scale,
            1e-10, "relative to max(1, N_s(N_s+1))");
  });
  {
    const auto& sq = params.squeeze;
    const bool matched = std::abs(sq.r_e - sq.resolved_r_p()) < 1e-15 && odd_multiple_of_pi(sq.theta_e + sq.theta_p);
    if (!matched) {
      v.skip("model", "noise_cancellation",
             "cancellation condition not met (needs r_e = r_p and theta_e + theta_p an odd multiple of pi)");
    } else {
      const auto m = effective_noise_moments(sq.resolved_r_p(), sq.theta_p, sq.r_e, sq.theta_e);
      v.upper("model", "noise_cancellation", std::max(std::abs(m.N), std::abs(m.M)), 1e-12);
    }
  }
  v.guarded("model", "detuning_constraints", [&] {
    const Detunings& d = params.detunings;
    double resid = 0.0;
    if (d.mode == DetuningMode::modified) {
      const double s = counter_rotating_shift(params);
      resid = std::max(std::abs(d.Delta_e - (d.beta - s)), std::abs(d.Delta_e - (d.omega_s + d.Delta_f - 2.0 * s)));
    } else {
      resid = std::max(std::abs(d.Delta_e - d.beta), std::abs(d.Delta_e - (d.omega_s + d.Delta_f)));
    }
    v.upper("model", "detuning_constraints", resid / std::max(1.0, std::abs(d.Delta_e)), 1e-12,
            "relative to Delta_e");
  });

  // lindblad
  const HamiltonianVariant static_variant =
      config.variant == HamiltonianVariant::time_averaged ? config.variant : HamiltonianVariant::squeezed_rwa;
  v.guarded("lindblad", "rhs_trace_and_hermiticity", [&] {
    const HamiltonianModel H = build_hamiltonian(static_variant, params, layout);
    const DissipatorSet D = build_collapse_set(CollapseVariant::squeezed, params, layout);
    const CMatrix L = liouvillian_matrix(H.static_part, D);
    double tr = 0.0, herm = 0.0, consistency = 0.0;
    for (int i = 0; i < 5; ++i) {
      const CMatrix rho = random_state(rng, layout.dim());
      const CMatrix drho = rhs(rho, 0.0, H, D);
      tr = std::max(tr, std::abs(drho.trace()));
      herm = std::max(herm, max_abs(drho - drho.adjoint()));
      consistency = std::max(consistency, max_abs(unvectorize(L * vectorize(rho), layout.dim()) - drho));
    }
    v.upper("lindblad", "rhs_traceless", tr, 1e-12);
    v.upper("lindblad", "rhs_hermitian", herm, 1e-12);
    v.upper("lindblad", "liouvillian_matches_rhs", consistency, 1e-12);
  });
  v.guarded("lindblad", "trajectory_invariants", [&] {
    const double t_end = std::min(config.t_final, 50.0);
    const auto curve = full_infidelity(params, static_variant, config.n_max, config.time_grid(t_end, 11),
                                       config.stepper_config());
    v.upper("lindblad", "trace_drift", curve.diagnostics.max_trace_drift, 1e-9);
    v.upper("lindblad", "hermiticity_drift", curve.diagnostics.max_hermiticity_drift, 1e-10);
    v.lower("lindblad", "positivity_floor", curve.diagnostics.min_eigenvalue, -1e-8);
  });
  v.guarded("lindblad", "steady_state_cross_method", [&] {
    const EffectiveModel m = closed_form_effective(resonant, false);
    const DensityMatrix a = steady_state(m.hamiltonian(), m.dissipators(), SteadyStateMethod::nullspace);
    const DensityMatrix b = steady_state(m.hamiltonian(), m.dissipators(), SteadyStateMethod::longtime);
    v.upper("lindblad", "steady_state_cross_method", trace_distance(a.matrix(), b.matrix()), 1e-6,
            "trace distance, effective model");
  });
  v.guarded("lindblad", "truncation_convergence", [&] {
    const auto times = config.time_grid(50.0, 11);
    const auto a = full_infidelity(params, static_variant, config.n_max, times, config.stepper_config());
    const auto b = full_infidelity(params, static_variant, config.n_max + 2, times, config.stepper_config());
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, std::abs(a.delta[i] - b.delta[i]));
    v.upper("lindblad", "truncation_convergence", worst, 1e-8,
            "delta(t) at n_max vs n_max + 2 over t in [0, 50/gamma]");
  });
  if (config.validate_frame_equivalence) {
    v.guarded("lindblad", "frame_equivalence", [&] {
      const FrameOracleResult r = frame_equivalence(FrameOracleSettings{}, config.stepper_config());
      v.upper("lindblad", "frame_equivalence", r.max_population_difference, 1e-3,
              "lab frame (n_max 16) vs squeezed frame (n_max 4), r_p = 0.5");
    });
  } else {
    v.skip("lindblad", "frame_equivalence", "disabled by validate_frame_equivalence = false");
  }

  // effective
  v.guarded("effective", "closed_form_vs_numeric", [&] {
    v.upper("effective", "closed_form_vs_numeric", effective_equivalence_residual(resonant, false), 1e-9,
            "squeezed_rwa, resonant detunings");
  });
  v.guarded("effective", "corrected_closed_form_vs_numeric", [&] {
    const SystemParams modified = config.system_params(config.Omega, DetuningMode::modified);
    v.upper("effective", "corrected_closed_form_vs_numeric", effective_equivalence_residual(modified, true),
            1e-9, "time_averaged, modified detunings");
  });
  v.guarded("effective", "randomized_equivalence", [&] {
    double worst = 0.0;
    for (const auto& p : random_elimination_params(config.validation_seed, 10)) {
      worst = std::max(worst, effective_equivalence_residual(p, false));
    }
    v.upper("effective", "randomized_equivalence", worst, 1e-9, "10 random sets, Omega/g_s <= 0.05");
  });
  v.guarded("effective", "rate_scaling", [&] {
    SystemParams doubled = resonant;
    doubled.Omega *= 2.0;
    const RateSummary a = rates(resonant), b = rates(doubled);
    const double dev = std::max({std::abs(b.Gamma_in / a.Gamma_in - 4.0), std::abs(b.Gamma_out / a.Gamma_out - 4.0),
                                 std::abs(b.ratio - a.ratio) / a.ratio});
    v.upper("effective", "rate_scaling", dev, 1e-12, "Omega doubled at fixed detunings");
  });
  v.guarded("effective", "no_jump_dissipative", [&] {
    const EliminationInputs in = elimination_inputs(resonant, layout);
    const Operator H_nh = build_no_jump(in.H_e, in.D);
    Eigen::ComplexEigenSolver<CMatrix> eig(H_nh.matrix(), false);
    v.upper("effective", "no_jump_dissipative", eig.eigenvalues().imag().maxCoeff(), 1e-12,
            "largest imaginary part of the no-jump spectrum");
  });

  // observables
  v.guarded("observables", "bell_orthonormality", [&] {
    const BellBasis b(layout);
    // Two orthonormal families: the one-excitation states either as dark/bright
    // pair or as the dressed combinations with |ff>|1>.
    const std::vector<std::vector<const CVector*>> families{
        {&b.phi_plus, &b.phi_minus, &b.psi_plus, &b.psi_minus, &b.dark, &b.phi_e, &b.phi_plus_1,
         &b.phi_minus_1, &b.psi_plus_1, &b.psi_minus_1},
        {&b.phi_plus, &b.phi_minus, &b.psi_plus, &b.psi_minus, &b.dark, &b.e_plus, &b.e_minus,
         &b.psi_plus_1, &b.psi_minus_1}};
    double worst = 0.0;
    for (const auto& family : families) {
      CMatrix M(layout.dim(), static_cast<Eigen::Index>(family.size()));
      for (std::size_t i = 0; i < family.size(); ++i) M.col(static_cast<Eigen::Index>(i)) = *family[i];
      worst = std::max(worst, max_abs(M.adjoint() * M - CMatrix::Identity(M.cols(), M.cols())));
    }
    v.upper("observables", "bell_orthonormality", worst, 1e-14);
  });
  v.guarded("observables", "dark_state_annihilation", [&] {
    const double g_s = bogoliubov_couplings(params.g, params.squeeze.resolved_r_p(), params.squeeze.theta_p).g_s;
    const Operator a = annihilation(layout);
    Operator H = Operator::zero(layout);
    for (int k = 1; k <= 2; ++k) {
      const Operator c = a * embed_atom_op(k, Level::e, Level::f, layout);
      H += g_s * (c + c.adjoint());
    }
    v.upper("observables", "dark_state_annihilation", (H.matrix() * BellBasis(layout).dark).cwiseAbs().maxCoeff(),
            1e-12);
  });
  v.guarded("observables", "uncertainty_relation", [&] {
    const int n_s = 1;
    const SpaceLayout big(std::max(config.n_max, n_s + 4));
    const double r = std::min(params.squeeze.resolved_r_p(), 2.0);
    const HamiltonianModel H{Operator::zero(big), {}};
    const DissipatorSet D{DissipatorTerm::standard(std::sqrt(config.kappa) * annihilation(big))};
    double worst = 0.0, min_product = std::numeric_limits<double>::infinity();
    evolve_observed(DensityMatrix::pure(big, basis_ket(big, Level::g, Level::g, n_s)),
                    config.time_grid(5.0 / config.kappa, 50), H, D, config.stepper_config(),
                    [&](double t, const DensityMatrix& rho) {
                      const auto q = quadrature_stats(rho, r, config.theta_p);
                      const auto p = uncertainty_prediction(n_s, config.kappa, t, r);
                      worst = std::max({worst, std::abs(q.var_X1 - p.var_X1), std::abs(q.var_X2 - p.var_X2)});
                      min_product = std::min(min_product, q.product);
                    });
    v.upper("observables", "quadrature_vs_prediction", worst, 1e-7, "n_s = 1");
    v.lower("observables", "uncertainty_product_floor", min_product, 0.25 - 1e-9);
  });
  return report;
}

}  // namespace sqcqed
