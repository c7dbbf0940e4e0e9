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

#include "sqcqed/hilbert.hpp"
#include "sqcqed/lindblad.hpp"

#include <numbers>
#include <optional>
#include <string>
#include <string_view>

namespace sqcqed {

/// Degenerate parametric pump: amplitude Omega_p and cavity detuning Delta_c in
/// the pump frame.
struct PumpSettings {
  double Omega_p = 0.0;
  double Delta_c = 1.0;
};

struct SqueezeSettings {
  double r_p = 0.0;
  double theta_p = std::numbers::pi;
  double r_e = 0.0;
  double theta_e = 0.0;
  /// When set, r_p is derived from the pump and the r_p field is ignored.
  std::optional<PumpSettings> pump;

  /// r_p after resolving the pump (throws ThresholdError above threshold).
  double resolved_r_p() const;
};

enum class DetuningMode { resonant, modified };

DetuningMode parse_detuning_mode(std::string_view name);
std::string to_string(DetuningMode mode);

/// Laser detuning Delta_e, microwave detuning Delta_f, laser frequency beta
/// (the rotating-frame reference) and squeezed-mode frequency omega_s.
struct Detunings {
  double Delta_e = 0.0;
  double Delta_f = 0.0;
  double beta = 0.0;
  double omega_s = 0.0;
  DetuningMode mode = DetuningMode::resonant;
  /// Delta_f - |g'_s|^2 / (2 Delta_e); equals Delta_f in resonant mode.
  double Delta_f_prime = 0.0;
};

struct SystemParams {
  double g = 0.0;
  double kappa = 1.0;
  double gamma_g = 0.5;
  double gamma_f = 0.5;
  double Omega = 0.0;
  double Omega_MW = 0.0;
  SqueezeSettings squeeze;
  Detunings detunings;

  double gamma() const noexcept { return gamma_g + gamma_f; }
  /// C = g^2 / (kappa gamma).
  double cooperativity() const;
  /// C_s = g_s^2 / (kappa gamma) = C cosh^2 r_p.
  double squeezed_cooperativity() const;
  /// Throws InvalidArgument when a rate is negative or kappa, gamma vanish.
  void validate() const;
};

struct PumpResolution {
  double r_p;
  double omega_s;
};

/// r_p = ln[(1 + a)/(1 - a)] / 4 and omega_s = Delta_c sqrt(1 - a^2), a = Omega_p / Delta_c.
PumpResolution squeeze_from_pump(double Omega_p, double Delta_c);

/// Inverse of squeeze_from_pump: Delta_c = omega_s cosh 2r_p, Omega_p = omega_s sinh 2r_p.
PumpSettings pump_from_squeeze(double r_p, double omega_s);

struct BogoliubovCouplings {
  double g_s;
  Complex g_s_prime;
};

/// g_s = g cosh r_p, g'_s = e^{-i theta_p} g sinh r_p.
BogoliubovCouplings bogoliubov_couplings(double g, double r_p, double theta_p);

struct NoiseMoments {
  double N;
  Complex M;
};

/// Broadband squeezed reservoir: N = sinh^2 r_e, M = cosh r_e sinh r_e e^{-i theta_e}.
NoiseMoments reservoir_moments(double r_e, double theta_e);

/// Reservoir moments seen by the squeezed mode a_s. They vanish when r_e = r_p
/// and theta_e + theta_p is an odd multiple of pi.
NoiseMoments effective_noise_moments(double r_p, double theta_p, double r_e, double theta_e);

struct DetuningInputs {
  double Omega = 0.0;
  /// Resonant mode: supply omega_s or Delta_e. Modified mode: Delta_e is required.
  std::optional<double> omega_s;
  std::optional<double> Delta_e;
  double r_p = 0.0;
  double theta_p = std::numbers::pi;
  double g = 0.0;
};

/// Resonant: Delta_f = Omega / 2^{7/4}, Delta_e = beta = omega_s + Delta_f.
/// Modified: with s = |g'_s|^2 / (2 Delta_e),
///   Delta_f = Omega / 2^{7/4} + s, beta = Delta_e + s, omega_s = Delta_e - Delta_f + 2 s.
Detunings resolve_detunings(DetuningMode mode, const DetuningInputs& inputs);

/// |g'_s|^2 / (2 Delta_e), the counter-rotating energy shift.
double counter_rotating_shift(const SystemParams& params);

enum class HamiltonianVariant { lab_frame, squeezed_rwa, squeezed_full_cr, time_averaged };

HamiltonianVariant parse_hamiltonian_variant(std::string_view name);
std::string to_string(HamiltonianVariant variant);

/// Hamiltonian of the requested variant.
///
/// The squeezed-frame variants are written in the frame rotating at beta for
/// both sum_k |e><e|_k and a_s^dagger a_s, where the laser drive is static:
///
///   H = (Delta_e - beta) sum_k |e><e|_k + Delta_f sum_k |f><f|_k + (omega_s - beta) a^dagger a
///       + g_s sum_k (a |e><f|_k + h.c.) + (Omega_MW / 2) sum_k (|f><g|_k + h.c.)
///       + (Omega / 2) sum_k (-1)^{k-1} (|g><e|_k + h.c.)
///
/// squeezed_full_cr adds -g'_s a^dagger sum_k |e><f|_k oscillating at 2 beta.
/// time_averaged adds, with s = |g'_s|^2 / (2 Delta_e),
///   s sum_k a^dagger a (|e><e|_k - |f><f|_k) - s sum_{k,k'} |f><e|_k |e><f|_k'.
/// lab_frame is the pump-frame Hamiltonian in terms of the bare mode a with the
/// laser drive oscillating at beta.
HamiltonianModel build_hamiltonian(HamiltonianVariant variant, const SystemParams& params,
                                   const SpaceLayout& layout);

enum class CollapseVariant { lab, squeezed };

/// Atomic decays sqrt(gamma_g) |g><e|_k, sqrt(gamma_f) |f><e|_k (k = 1, 2) followed by
/// the cavity term sqrt(kappa) a. The cavity term carries the reservoir moments
/// (lab) or the squeezed-mode moments (squeezed); moments below 1e-12 give a
/// standard dissipator.
DissipatorSet build_collapse_set(CollapseVariant variant, const SystemParams& params,
                                 const SpaceLayout& layout);

/// sum_k |e><e|_k + a^dagger a.
Operator excitation_number(const SpaceLayout& layout);

/// Fock amplitudes (length n_max + 1, normalized after truncation) of the
/// state annihilated by a_s = cosh r a + e^{-i theta} sinh r a^dagger.
CVector squeezed_vacuum_amplitudes(int n_max, double r, double theta);

}  // namespace sqcqed
