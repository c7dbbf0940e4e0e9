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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace sqcqed {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "pi") return std::numbers::pi;
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (trim(item).empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

std::optional<double> parse_optional(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "auto" || v.empty()) return std::nullopt;
  return parse_double(key, v);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("auto");
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field number_field(T RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            if constexpr (std::is_same_v<T, int>) {
              c.*member = parse_int(k, v);
            } else if constexpr (std::is_same_v<T, unsigned>) {
              const int parsed = parse_int(k, v);
              if (parsed < 0) throw ConfigError("config key '" + k + "' must be >= 0");
              c.*member = static_cast<unsigned>(parsed);
            } else {
              c.*member = parse_double(k, v);
            }
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_same_v<T, double>) {
              return format_double(c.*member);
            } else {
              return std::to_string(c.*member);
            }
          }};
}

Field optional_field(std::optional<double> RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_optional(k, v);
          },
          [member](const RunConfig& c) { return format_optional(c.*member); }};
}

Field list_field(std::vector<double> RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_list(k, v);
          },
          [member](const RunConfig& c) { return format_list(c.*member); }};
}

Field bool_field(bool RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_bool(k, v);
          },
          [member](const RunConfig& c) { return std::string(c.*member ? "true" : "false"); }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = [] {
    std::map<std::string, Field> f;
    f["experiment"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.experiment = trim(v); },
                       [](const RunConfig& c) { return c.experiment; }};
    f["gamma_g"] = number_field(&RunConfig::gamma_g);
    f["gamma_f"] = number_field(&RunConfig::gamma_f);
    f["kappa"] = number_field(&RunConfig::kappa);
    f["C"] = number_field(&RunConfig::C);
    f["g"] = optional_field(&RunConfig::g);
    f["Omega"] = number_field(&RunConfig::Omega);
    f["Omega_values"] = list_field(&RunConfig::Omega_values);
    f["Omega_MW"] = optional_field(&RunConfig::Omega_MW);
    f["r_p"] = number_field(&RunConfig::r_p);
    f["theta_p"] = number_field(&RunConfig::theta_p);
    f["r_e"] = optional_field(&RunConfig::r_e);
    f["theta_e"] = optional_field(&RunConfig::theta_e);
    f["Omega_p"] = optional_field(&RunConfig::Omega_p);
    f["Delta_c"] = optional_field(&RunConfig::Delta_c);
    f["detuning_mode"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          try {
            c.detuning_mode = parse_detuning_mode(trim(v));
          } catch (const InvalidArgument& e) {
            throw ConfigError("config key '" + k + "': " + e.what());
          }
        },
        [](const RunConfig& c) { return to_string(c.detuning_mode); }};
    f["Delta_e_factor"] = number_field(&RunConfig::Delta_e_factor);
    f["Delta_e"] = optional_field(&RunConfig::Delta_e);
    f["variant"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          try {
            c.variant = parse_hamiltonian_variant(trim(v));
          } catch (const InvalidArgument& e) {
            throw ConfigError("config key '" + k + "': " + e.what());
          }
        },
        [](const RunConfig& c) { return to_string(c.variant); }};
    f["n_max"] = number_field(&RunConfig::n_max);
    f["stepper"] = {
        [](RunConfig& c, const std::string& k, const std::string& v) {
          const std::string s = trim(v);
          if (s == "dopri5") {
            c.stepper = StepperConfig::Method::dopri5;
          } else if (s == "rk4") {
            c.stepper = StepperConfig::Method::rk4;
          } else {
            throw ConfigError("config key '" + k + "': expected dopri5 or rk4, got '" + s + "'");
          }
        },
        [](const RunConfig& c) {
          return std::string(c.stepper == StepperConfig::Method::dopri5 ? "dopri5" : "rk4");
        }};
    f["atol"] = number_field(&RunConfig::atol);
    f["rtol"] = number_field(&RunConfig::rtol);
    f["rk4_step"] = number_field(&RunConfig::rk4_step);
    f["threads"] = number_field(&RunConfig::threads);
    f["t_final"] = number_field(&RunConfig::t_final);
    f["samples"] = number_field(&RunConfig::samples);
    f["fig2_r_p_min"] = number_field(&RunConfig::fig2_r_p_min);
    f["fig2_r_p_max"] = number_field(&RunConfig::fig2_r_p_max);
    f["fig2_points"] = number_field(&RunConfig::fig2_points);
    f["fig3b_C_min"] = number_field(&RunConfig::fig3b_C_min);
    f["fig3b_C_max"] = number_field(&RunConfig::fig3b_C_max);
    f["fig3b_C_points"] = number_field(&RunConfig::fig3b_C_points);
    f["fig3b_Omega_min"] = number_field(&RunConfig::fig3b_Omega_min);
    f["fig3b_Omega_max"] = number_field(&RunConfig::fig3b_Omega_max);
    f["fig3b_Omega_points"] = number_field(&RunConfig::fig3b_Omega_points);
    f["fig3b_t_eval"] = number_field(&RunConfig::fig3b_t_eval);
    f["fig3b_optimum_tol"] = number_field(&RunConfig::fig3b_optimum_tol);
    f["figS2_r_p_values"] = list_field(&RunConfig::figS2_r_p_values);
    f["figS2_full_model"] = bool_field(&RunConfig::figS2_full_model);
    f["slow_path"] = bool_field(&RunConfig::slow_path);
    f["slow_t_final"] = number_field(&RunConfig::slow_t_final);
    f["slow_samples"] = number_field(&RunConfig::slow_samples);
    f["uncertainty_n_s"] = list_field(&RunConfig::uncertainty_n_s);
    f["uncertainty_r_p"] = list_field(&RunConfig::uncertainty_r_p);
    f["uncertainty_t_final_kappa"] = number_field(&RunConfig::uncertainty_t_final_kappa);
    f["uncertainty_samples"] = number_field(&RunConfig::uncertainty_samples);
    f["validate_frame_equivalence"] = bool_field(&RunConfig::validate_frame_equivalence);
    f["validation_seed"] = number_field(&RunConfig::validation_seed);
    f["out_dir"] = {[](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = trim(v); },
                    [](const RunConfig& c) { return c.out_dir.string(); }};
    return f;
  }();
  return table;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double RunConfig::resolved_r_p() const {
  if (Omega_p && Delta_c) {
    try {
      return squeeze_from_pump(*Omega_p, *Delta_c).r_p;
    } catch (const Error& e) {
      throw ConfigError(std::string("pump settings: ") + e.what());
    }
  }
  return r_p;
}

double RunConfig::resolved_r_e() const { return r_e ? *r_e : resolved_r_p(); }

double RunConfig::resolved_theta_e() const {
  return theta_e ? *theta_e : std::numbers::pi - theta_p;
}

double RunConfig::resolved_g() const {
  return g ? *g : std::sqrt(C * kappa * (gamma_g + gamma_f));
}

double RunConfig::resolved_Omega_MW(double Om) const {
  return Omega_MW ? *Omega_MW : std::numbers::sqrt2 * Om / std::pow(2.0, 1.75);
}

SystemParams RunConfig::system_params(double Om, DetuningMode mode) const {
  SystemParams p;
  p.g = resolved_g();
  p.kappa = kappa;
  p.gamma_g = gamma_g;
  p.gamma_f = gamma_f;
  p.Omega = Om;
  p.Omega_MW = resolved_Omega_MW(Om);
  p.squeeze.r_p = resolved_r_p();
  p.squeeze.theta_p = theta_p;
  p.squeeze.r_e = resolved_r_e();
  p.squeeze.theta_e = resolved_theta_e();
  if (Omega_p && Delta_c) p.squeeze.pump = PumpSettings{*Omega_p, *Delta_c};

  const double r = p.squeeze.r_p;
  const double gp = std::abs(bogoliubov_couplings(p.g, r, theta_p).g_s_prime);
  DetuningInputs in;
  in.Omega = Om;
  in.r_p = r;
  in.theta_p = theta_p;
  in.g = p.g;
  if (Delta_e) {
    in.Delta_e = *Delta_e;
  } else if (p.squeeze.pump && mode == DetuningMode::resonant) {
    in.omega_s = squeeze_from_pump(p.squeeze.pump->Omega_p, p.squeeze.pump->Delta_c).omega_s;
  } else {
    in.Delta_e = Delta_e_factor * (gp > 0.0 ? gp : p.g);
  }
  try {
    p.detunings = resolve_detunings(mode, in);
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("invalid physical parameters: ") + e.what());
  }
  return p;
}

StepperConfig RunConfig::stepper_config() const {
  StepperConfig s;
  s.method = stepper;
  s.atol = atol;
  s.rtol = rtol;
  s.rk4_step = rk4_step;
  return s;
}

std::vector<double> RunConfig::time_grid(double t_end, int points) const {
  if (points < 2) throw ConfigError("time grid needs at least 2 points");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t_end * i / (points - 1);
  return t;
}

void RunConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string(name) + " must be > 0");
  };
  auto nonneg = [](double v, const char* name) {
    if (!(v >= 0.0)) throw ConfigError(std::string(name) + " must be >= 0");
  };
  nonneg(gamma_g, "gamma_g");
  nonneg(gamma_f, "gamma_f");
  positive(gamma_g + gamma_f, "gamma_g + gamma_f");
  positive(kappa, "kappa");
  if (!g) positive(C, "C");
  if (g) nonneg(*g, "g");
  positive(Omega, "Omega");
  for (double o : Omega_values) positive(o, "Omega_values entries");
  nonneg(r_p, "r_p");
  if (r_e) nonneg(*r_e, "r_e");
  if (Omega_p.has_value() != Delta_c.has_value()) {
    throw ConfigError("Omega_p and Delta_c must be given together");
  }
  resolved_r_p();
  if (n_max < 1) throw ConfigError("n_max must be >= 1");
  positive(atol, "atol");
  positive(rtol, "rtol");
  positive(rk4_step, "rk4_step");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  positive(t_final, "t_final");
  if (samples < 2) throw ConfigError("samples must be >= 2");
  if (fig2_points < 2) throw ConfigError("fig2_points must be >= 2");
  if (fig3b_C_points < 2 || fig3b_Omega_points < 2) throw ConfigError("fig3b grid needs >= 2 points");
  positive(fig3b_C_min, "fig3b_C_min");
  positive(fig3b_Omega_min, "fig3b_Omega_min");
  if (!(fig3b_C_max > fig3b_C_min) || !(fig3b_Omega_max > fig3b_Omega_min)) {
    throw ConfigError("fig3b ranges must be increasing");
  }
  positive(fig3b_t_eval, "fig3b_t_eval");
  positive(fig3b_optimum_tol, "fig3b_optimum_tol");
  for (double r : figS2_r_p_values) nonneg(r, "figS2_r_p_values entries");
  positive(slow_t_final, "slow_t_final");
  if (slow_samples < 2) throw ConfigError("slow_samples must be >= 2");
  for (double n : uncertainty_n_s) {
    if (n < 0 || n != std::floor(n)) throw ConfigError("uncertainty_n_s entries must be integers >= 0");
  }
  for (double r : uncertainty_r_p) nonneg(r, "uncertainty_r_p entries");
  positive(uncertainty_t_final_kappa, "uncertainty_t_final_kappa");
  if (uncertainty_samples < 2) throw ConfigError("uncertainty_samples must be >= 2");
}

void apply_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& table = fields();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second.set(config, key, value);
}

RunConfig parse_config(const std::string& text, RunConfig base) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      apply_config_value(base, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

std::map<std::string, std::string> config_to_map(const RunConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& [key, field] : fields()) out[key] = field.get(config);
  return out;
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  for (const auto& [key, value] : config_to_map(config)) out += key + " = " + value + "\n";
  return out;
}

}  // namespace sqcqed
