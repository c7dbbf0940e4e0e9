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

#include "sqcqed/model.hpp"

#include "sqcqed/errors.hpp"

#include <cmath>
#include <sstream>

namespace sqcqed {

namespace {

constexpr Complex I{0.0, 1.0};

double drive_detuning(double Omega) { return Omega / std::pow(2.0, 1.75); }

struct AtomOps {
  Operator ee, ff, eg, ef, fg;  // |e><e|, |f><f|, |e><g|, |e><f|, |f><g|
};

AtomOps atom_ops(int k, const SpaceLayout& layout) {
  return {embed_atom_op(k, Level::e, Level::e, layout), embed_atom_op(k, Level::f, Level::f, layout),
          embed_atom_op(k, Level::e, Level::g, layout), embed_atom_op(k, Level::e, Level::f, layout),
          embed_atom_op(k, Level::f, Level::g, layout)};
}

}  // namespace

double SqueezeSettings::resolved_r_p() const {
  if (pump) return squeeze_from_pump(pump->Omega_p, pump->Delta_c).r_p;
  return r_p;
}

DetuningMode parse_detuning_mode(std::string_view name) {
  if (name == "resonant") return DetuningMode::resonant;
  if (name == "modified") return DetuningMode::modified;
  throw InvalidArgument("unknown detuning mode '" + std::string(name) + "'");
}

std::string to_string(DetuningMode mode) {
  return mode == DetuningMode::resonant ? "resonant" : "modified";
}

double SystemParams::cooperativity() const { return g * g / (kappa * gamma()); }

double SystemParams::squeezed_cooperativity() const {
  const double c = std::cosh(squeeze.resolved_r_p());
  return cooperativity() * c * c;
}

void SystemParams::validate() const {
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0)) throw InvalidArgument(std::string(name) + " must be >= 0");
  };
  nonneg(g, "g");
  nonneg(gamma_g, "gamma_g");
  nonneg(gamma_f, "gamma_f");
  nonneg(Omega, "Omega");
  nonneg(Omega_MW, "Omega_MW");
  nonneg(squeeze.r_p, "r_p");
  nonneg(squeeze.r_e, "r_e");
  if (!(kappa > 0.0)) throw InvalidArgument("kappa must be > 0");
  if (!(gamma() > 0.0)) throw InvalidArgument("gamma = gamma_g + gamma_f must be > 0");
  squeeze.resolved_r_p();
}

PumpResolution squeeze_from_pump(double Omega_p, double Delta_c) {
  if (Delta_c == 0.0) throw InvalidArgument("squeeze_from_pump: Delta_c must be nonzero");
  const double alpha = Omega_p / Delta_c;
  if (!(std::abs(alpha) < 1.0)) {
    std::ostringstream msg;
    msg << "parametric pump at or above threshold: |Omega_p / Delta_c| = " << std::abs(alpha);
    throw ThresholdError(msg.str());
  }
  return {0.25 * std::log((1.0 + alpha) / (1.0 - alpha)), Delta_c * std::sqrt(1.0 - alpha * alpha)};
}

PumpSettings pump_from_squeeze(double r_p, double omega_s) {
  return {omega_s * std::sinh(2.0 * r_p), omega_s * std::cosh(2.0 * r_p)};
}

BogoliubovCouplings bogoliubov_couplings(double g, double r_p, double theta_p) {
  if (!(g >= 0.0)) throw InvalidArgument("bogoliubov_couplings: g must be >= 0");
  return {g * std::cosh(r_p), std::exp(-I * theta_p) * g * std::sinh(r_p)};
}

NoiseMoments reservoir_moments(double r_e, double theta_e) {
  if (!(r_e >= 0.0)) throw InvalidArgument("reservoir_moments: r_e must be >= 0");
  const double s = std::sinh(r_e);
  return {s * s, std::cosh(r_e) * s * std::exp(-I * theta_e)};
}

NoiseMoments effective_noise_moments(double r_p, double theta_p, double r_e, double theta_e) {
  if (!(r_p >= 0.0) || !(r_e >= 0.0)) {
    throw InvalidArgument("effective_noise_moments: squeezing parameters must be >= 0");
  }
  const double cp = std::cosh(r_p), sp = std::sinh(r_p);
  const double ce = std::cosh(r_e), se = std::sinh(r_e);
  const double phi = theta_e + theta_p;
  // N = |u|^2 with u = cosh r_p sinh r_e + e^{i phi} sinh r_p cosh r_e. Writing N
  // as a modulus keeps the cancellation at phi = pi exact up to rounding of u.
  const Complex e_phi = std::exp(I * phi);
  const Complex u = cp * se + e_phi * sp * ce;
  const double N = std::norm(u);
  const Complex M = std::exp(I * (theta_p - phi)) * u * (cp * ce + e_phi * se * sp);
  return {N, M};
}

Detunings resolve_detunings(DetuningMode mode, const DetuningInputs& in) {
  if (!(in.Omega > 0.0)) throw InvalidArgument("resolve_detunings: Omega must be > 0");
  Detunings d;
  d.mode = mode;
  const double Df0 = drive_detuning(in.Omega);
  if (mode == DetuningMode::resonant) {
    d.Delta_f = Df0;
    if (in.omega_s) {
      d.omega_s = *in.omega_s;
      d.Delta_e = d.omega_s + d.Delta_f;
    } else if (in.Delta_e) {
      d.Delta_e = *in.Delta_e;
      d.omega_s = d.Delta_e - d.Delta_f;
    } else {
      throw InvalidArgument("resolve_detunings: resonant mode needs omega_s or Delta_e");
    }
    d.beta = d.Delta_e;
    d.Delta_f_prime = d.Delta_f;
    return d;
  }
  if (!in.Delta_e || *in.Delta_e == 0.0) {
    throw InvalidArgument("resolve_detunings: modified mode needs a nonzero Delta_e");
  }
  const double gp = std::abs(bogoliubov_couplings(in.g, in.r_p, in.theta_p).g_s_prime);
  d.Delta_e = *in.Delta_e;
  const double s = gp * gp / (2.0 * d.Delta_e);
  d.Delta_f = Df0 + s;
  d.beta = d.Delta_e + s;
  d.omega_s = d.Delta_e - d.Delta_f + 2.0 * s;
  d.Delta_f_prime = d.Delta_f - s;
  return d;
}

double counter_rotating_shift(const SystemParams& p) {
  if (p.detunings.Delta_e == 0.0) return 0.0;
  const double gp =
      std::abs(bogoliubov_couplings(p.g, p.squeeze.resolved_r_p(), p.squeeze.theta_p).g_s_prime);
  return gp * gp / (2.0 * p.detunings.Delta_e);
}

HamiltonianVariant parse_hamiltonian_variant(std::string_view name) {
  if (name == "lab_frame") return HamiltonianVariant::lab_frame;
  if (name == "squeezed_rwa") return HamiltonianVariant::squeezed_rwa;
  if (name == "squeezed_full_cr") return HamiltonianVariant::squeezed_full_cr;
  if (name == "time_averaged") return HamiltonianVariant::time_averaged;
  throw InvalidArgument("unknown Hamiltonian variant '" + std::string(name) + "'");
}

std::string to_string(HamiltonianVariant v) {
  switch (v) {
    case HamiltonianVariant::lab_frame: return "lab_frame";
    case HamiltonianVariant::squeezed_rwa: return "squeezed_rwa";
    case HamiltonianVariant::squeezed_full_cr: return "squeezed_full_cr";
    case HamiltonianVariant::time_averaged: return "time_averaged";
  }
  throw InvalidArgument("unknown Hamiltonian variant");
}

Operator excitation_number(const SpaceLayout& layout) {
  const Operator a = annihilation(layout);
  return embed_atom_op(1, Level::e, Level::e, layout) + embed_atom_op(2, Level::e, Level::e, layout) +
         a.adjoint() * a;
}

CVector squeezed_vacuum_amplitudes(int n_max, double r, double theta) {
  if (n_max < 0) throw InvalidArgument("squeezed_vacuum_amplitudes: n_max must be >= 0");
  CVector c = CVector::Zero(n_max + 1);
  c[0] = 1.0;
  const Complex ratio = -std::exp(-I * theta) * std::tanh(r);
  // c_{m+1} sqrt(m+1) = -e^{-i theta} tanh(r) sqrt(m) c_{m-1}
  for (int m = 1; m + 1 <= n_max; ++m) {
    c[m + 1] = ratio * std::sqrt(static_cast<double>(m) / (m + 1)) * c[m - 1];
  }
  return c / c.norm();
}

HamiltonianModel build_hamiltonian(HamiltonianVariant variant, const SystemParams& p,
                                   const SpaceLayout& layout) {
  p.validate();
  const Detunings& det = p.detunings;
  const double r_p = p.squeeze.resolved_r_p();
  const auto [g_s, g_sp] = bogoliubov_couplings(p.g, r_p, p.squeeze.theta_p);

  const Operator a = annihilation(layout);
  const Operator ad = a.adjoint();
  const Operator n = ad * a;
  const AtomOps atoms[2] = {atom_ops(1, layout), atom_ops(2, layout)};

  Operator H = Operator::zero(layout);
  Operator drive = Operator::zero(layout);  // sum_k (-1)^{k-1} |g><e|_k
  for (int k = 0; k < 2; ++k) {
    const AtomOps& at = atoms[k];
    H += p.Omega_MW / 2.0 * (at.fg + at.fg.adjoint());
    drive += (k == 0 ? 1.0 : -1.0) * at.eg.adjoint();
  }

  if (variant == HamiltonianVariant::lab_frame) {
    const double omega_s = det.omega_s;
    const PumpSettings pump = p.squeeze.pump ? *p.squeeze.pump : pump_from_squeeze(r_p, omega_s);
    const double Delta_c = pump.Delta_c;
    const Complex pump_phase = std::exp(I * p.squeeze.theta_p);
    H += Delta_c * n;
    H += pump.Omega_p / 2.0 * (pump_phase * (a * a) + std::conj(pump_phase) * (ad * ad));
    for (const AtomOps& at : atoms) {
      H += det.Delta_e * at.ee + det.Delta_f * at.ff;
      H += p.g * (a * at.ef + (a * at.ef).adjoint());
    }
    return {H, {{p.Omega / 2.0 * drive, det.beta}}};
  }

  H += (det.omega_s - det.beta) * n;
  for (const AtomOps& at : atoms) {
    H += (det.Delta_e - det.beta) * at.ee + det.Delta_f * at.ff;
    H += g_s * (a * at.ef + (a * at.ef).adjoint());
  }
  H += p.Omega / 2.0 * (drive + drive.adjoint());

  switch (variant) {
    case HamiltonianVariant::squeezed_rwa:
      return {H, {}};
    case HamiltonianVariant::squeezed_full_cr: {
      const Operator cr = -g_sp * (ad * (atoms[0].ef + atoms[1].ef));
      return {H, {{cr, 2.0 * det.beta}}};
    }
    case HamiltonianVariant::time_averaged: {
      if (det.Delta_e == 0.0) throw InvalidArgument("time_averaged variant needs Delta_e != 0");
      const double s = std::norm(g_sp) / (2.0 * det.Delta_e);
      for (const AtomOps& at : atoms) H += s * (n * (at.ee - at.ff));
      for (const AtomOps& ak : atoms) {
        for (const AtomOps& akk : atoms) H -= s * (ak.ef.adjoint() * akk.ef);
      }
      return {H, {}};
    }
    case HamiltonianVariant::lab_frame:
      break;
  }
  throw InvalidArgument("unknown Hamiltonian variant");
}

DissipatorSet build_collapse_set(CollapseVariant variant, const SystemParams& p,
                                 const SpaceLayout& layout) {
  p.validate();
  DissipatorSet out;
  for (int k = 1; k <= 2; ++k) {
    const std::string suffix = std::to_string(k);
    out.push_back(DissipatorTerm::standard(
        std::sqrt(p.gamma_g) * embed_atom_op(k, Level::g, Level::e, layout), "L_g" + suffix));
    out.push_back(DissipatorTerm::standard(
        std::sqrt(p.gamma_f) * embed_atom_op(k, Level::f, Level::e, layout), "L_f" + suffix));
  }
  const Operator cavity = std::sqrt(p.kappa) * annihilation(layout);
  const SqueezeSettings& sq = p.squeeze;
  const NoiseMoments m = variant == CollapseVariant::lab
                             ? reservoir_moments(sq.r_e, sq.theta_e)
                             : effective_noise_moments(sq.resolved_r_p(), sq.theta_p, sq.r_e, sq.theta_e);
  if (std::abs(m.N) <= 1e-12 && std::abs(m.M) <= 1e-12) {
    out.push_back(DissipatorTerm::standard(cavity, variant == CollapseVariant::lab ? "L_a" : "L_as"));
  } else {
    out.push_back(DissipatorTerm::squeezed_pair(cavity, std::max(m.N, 0.0), m.M,
                                                variant == CollapseVariant::lab ? "L_a" : "L_as"));
  }
  return out;
}

}  // namespace sqcqed
