// SPDX-License-Identifier: Apache-2.0
//
// bsabf: beam-split-aware hybrid beamforming simulator
// Copyright (C) 2026 The bsabf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Command-line front end. Talks to the simulator only through the C API.

#include <bsabf/bsabf.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ApiError {
  bsabf_status status;
  std::string message;
};

void check(bsabf_status status) {
  if (status != BSABF_OK) throw ApiError{status, bsabf_last_error()};
}

int exit_code_for(bsabf_status status) {
  switch (status) {
    case BSABF_OK: return kExitOk;
    case BSABF_ERR_INVALID_ARGUMENT:
    case BSABF_ERR_CONFIG: return kExitConfig;
    case BSABF_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitFailure;
  }
}

using ConfigPtr = std::unique_ptr<bsabf_config, decltype(&bsabf_config_destroy)>;
using ResultPtr = std::unique_ptr<bsabf_sweep_result, decltype(&bsabf_sweep_result_destroy)>;

// Options shared by every subcommand that needs a configuration.
struct ConfigOptions {
  std::string profile = "desk";
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--profile", opts.profile, "Parameter preset")
      ->check(CLI::IsMember({"desk", "paper"}));
  cmd->add_option("--config", opts.config_path, "Key-value configuration file");
  cmd->add_option("--set", opts.overrides, "Override a setting, key=value (repeatable)");
}

ConfigPtr build_config(const ConfigOptions& opts) {
  bsabf_config* raw = nullptr;
  check(bsabf_config_create(opts.profile.c_str(), &raw));
  ConfigPtr cfg(raw, &bsabf_config_destroy);
  if (!opts.config_path.empty()) check(bsabf_config_load_file(cfg.get(), opts.config_path.c_str()));
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw ApiError{BSABF_ERR_CONFIG, "--set expects key=value, got '" + kv + "'"};
    }
    check(bsabf_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  return cfg;
}

std::string config_text(const bsabf_config* cfg) {
  size_t needed = 0;
  check(bsabf_config_to_text(cfg, nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(bsabf_config_to_text(cfg, text.data(), text.size(), &needed));
  text.resize(needed - 1);
  return text;
}

std::string config_value(const bsabf_config* cfg, const char* key) {
  size_t needed = 0;
  check(bsabf_config_get(cfg, key, nullptr, 0, &needed));
  std::string value(needed, '\0');
  check(bsabf_config_get(cfg, key, value.data(), value.size(), &needed));
  value.resize(needed - 1);
  return value;
}

std::vector<double> parse_value_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ApiError{BSABF_ERR_CONFIG, "empty entry in --values"};
    item = item.substr(first, last - first + 1);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || errno == ERANGE) {
      throw ApiError{BSABF_ERR_CONFIG, "invalid number '" + item + "' in --values"};
    }
    out.push_back(v);
  }
  if (out.empty()) throw ApiError{BSABF_ERR_CONFIG, "--values is empty"};
  return out;
}

std::string default_values(bsabf_axis axis) {
  switch (axis) {
    case BSABF_AXIS_SNR_DB: return "-10,-5,0,5,10";
    case BSABF_AXIS_BANDWIDTH_HZ: return "1e9,10e9,30e9,50e9,70e9";
    case BSABF_AXIS_NUM_USERS: return "2,4,8";
  }
  return {};
}

struct SimulateOptions {
  ConfigOptions config;
  std::string sweep;
  std::string values;
  std::optional<int> trials;
  std::string methods = "all";
  std::optional<unsigned long long> seed;
  std::string out = "-";
  std::string format = "csv";
  int threads = 0;
  int max_redraws = 10;
};

int run_simulate(const SimulateOptions& opts) {
  ConfigPtr cfg = build_config(opts.config);
  if (opts.seed) check(bsabf_config_set(cfg.get(), "seed", std::to_string(*opts.seed).c_str()));
  check(bsabf_config_validate(cfg.get()));

  bsabf_axis axis{};
  check(bsabf_parse_axis(opts.sweep.c_str(), &axis));
  unsigned methods = 0;
  check(bsabf_parse_methods(opts.methods.c_str(), &methods));
  const auto values = parse_value_list(opts.values.empty() ? default_values(axis) : opts.values);

  bsabf_sweep_spec spec{};
  spec.axis = axis;
  spec.values = values.data();
  spec.num_values = values.size();
  spec.trials = opts.trials.value_or(opts.config.profile == "paper" ? 100 : 20);
  spec.methods = methods;
  spec.seed = std::stoull(config_value(cfg.get(), "seed"));
  spec.threads = opts.threads;
  spec.max_redraws = opts.max_redraws;

  bsabf_sweep_result* raw = nullptr;
  check(bsabf_run_sweep(cfg.get(), &spec, &raw));
  ResultPtr result(raw, &bsabf_sweep_result_destroy);
  const auto format = opts.format == "json" ? BSABF_FORMAT_JSON : BSABF_FORMAT_CSV;
  check(bsabf_sweep_result_write(result.get(), format, opts.out.c_str()));
  if (const int redraws = bsabf_sweep_result_redraws(result.get()); redraws > 0) {
    std::cerr << "note: " << redraws << " channel redraw(s) after rank-deficient draws\n";
  }
  return kExitOk;
}

struct ArrayGainOptions {
  ConfigOptions config;
  double phi = 0.0;
  int subcarrier = 1;
  int points = 0;
  std::string out = "-";
};

int run_array_gain(const ArrayGainOptions& opts) {
  ConfigPtr cfg = build_config(opts.config);
  check(bsabf_config_validate(cfg.get()));
  const int num_tx = std::stoi(config_value(cfg.get(), "N_T"));
  const size_t points = opts.points > 0 ? static_cast<size_t>(opts.points)
                                        : static_cast<size_t>(16 * num_tx + 1);
  std::vector<double> phi_bar(points), gain(points);
  check(bsabf_array_gain_curve(cfg.get(), opts.phi, opts.subcarrier - 1, points, phi_bar.data(),
                               gain.data()));

  std::ostringstream csv;
  csv.precision(17);
  csv << "phi_bar,gain\n";
  for (size_t i = 0; i < points; ++i) csv << phi_bar[i] << ',' << gain[i] << '\n';
  if (opts.out == "-") {
    std::cout << csv.str();
    return kExitOk;
  }
  std::ofstream file(opts.out, std::ios::trunc);
  if (!file || !(file << csv.str())) throw ApiError{BSABF_ERR_IO, "cannot write '" + opts.out + "'"};
  return kExitOk;
}

int run_show_config(const ConfigOptions& opts) {
  ConfigPtr cfg = build_config(opts);
  check(bsabf_config_validate(cfg.get()));
  uint64_t hash = 0;
  check(bsabf_config_hash(cfg.get(), &hash));
  std::cout << config_text(cfg.get());
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(hash));
  std::cout << "# config_hash = " << hex << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beam-split-aware hybrid beamforming simulator"};
  app.set_version_flag("--version", std::string(bsabf_version()));
  app.require_subcommand(1);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run a seeded Monte-Carlo sweep");
  add_config_options(simulate, sim.config);
  simulate->add_option("--sweep", sim.sweep, "Sweep axis")
      ->required()
      ->check(CLI::IsMember({"snr", "bandwidth", "users", "snr_db", "bandwidth_hz", "num_users"}));
  simulate->add_option("--values", sim.values,
                       "Comma-separated axis values (dB, Hz or user count)");
  simulate->add_option("--trials", sim.trials, "Trials per sweep point")->check(CLI::PositiveNumber);
  simulate->add_option("--methods", sim.methods,
                       "Comma-separated list of omp,bsa_omp,sd_oracle,fully_digital or all");
  simulate->add_option("--seed", sim.seed, "Master seed (overrides the config file)");
  simulate->add_option("--out", sim.out, "Output path, '-' for stdout");
  simulate->add_option("--format", sim.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--threads", sim.threads, "Worker threads, 0 for all cores")
      ->check(CLI::NonNegativeNumber);
  simulate->add_option("--max-redraws", sim.max_redraws, "Redraw cap per trial")
      ->check(CLI::NonNegativeNumber);

  ArrayGainOptions gain;
  auto* array_gain = app.add_subcommand("array-gain", "Emit the array-gain curve of one subcarrier");
  add_config_options(array_gain, gain.config);
  array_gain->add_option("--phi", gain.phi, "Steering direction")->required()->check(CLI::Range(-1.0, 1.0));
  array_gain->add_option("--subcarrier", gain.subcarrier, "Subcarrier index, 1-based")->required();
  array_gain->add_option("--points", gain.points, "Grid points (default 16*N_T+1)")
      ->check(CLI::PositiveNumber);
  array_gain->add_option("--out", gain.out, "Output path, '-' for stdout");

  ConfigOptions show;
  auto* show_config = app.add_subcommand("show-config", "Print the resolved configuration");
  add_config_options(show_config, show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*array_gain) return run_array_gain(gain);
    return run_show_config(show);
  } catch (const ApiError& e) {
    std::cerr << "error: " << bsabf_status_string(e.status) << ": " << e.message << '\n';
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
