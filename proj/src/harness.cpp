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


#include "bsabf/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include <json.hpp>

#include "bsabf/bsa.hpp"
#include "bsabf/channel.hpp"
#include "bsabf/error.hpp"
#include "bsabf/omp.hpp"

namespace bsabf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

bool contains(std::span<const Method> methods, Method m) {
  return std::find(methods.begin(), methods.end(), m) != methods.end();
}

struct PointStats {
  double mean = 0.0;
  double stddev = 0.0;
};

PointStats summarize(const std::vector<double>& xs) {
  PointStats s;
  if (xs.empty()) return s;
  for (const double x : xs) s.mean += x;
  s.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (const double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kSnrDb: return "snr_db";
    case SweepAxis::kBandwidthHz: return "bandwidth_hz";
    case SweepAxis::kNumUsers: return "num_users";
  }
  return "unknown";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kOmp: return "omp";
    case Method::kBsaOmp: return "bsa_omp";
    case Method::kSdOracle: return "sd_oracle";
    case Method::kFullyDigital: return "fully_digital";
  }
  return "unknown";
}

SweepAxis parse_axis(std::string_view name) {
  name = trim(name);
  if (name == "snr" || name == "snr_db") return SweepAxis::kSnrDb;
  if (name == "bandwidth" || name == "bandwidth_hz") return SweepAxis::kBandwidthHz;
  if (name == "users" || name == "num_users") return SweepAxis::kNumUsers;
  throw ConfigError("unknown sweep axis '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  name = trim(name);
  for (const Method m : kAllMethods) {
    if (to_string(m) == name) return m;
  }
  throw ConfigError("unknown method '" + std::string(name) + "'");
}

std::vector<Method> parse_methods(std::string_view list) {
  if (trim(list) == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
  std::vector<Method> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = trim(list.substr(0, comma));
    if (!item.empty()) {
      const Method m = parse_method(item);
      if (contains(out, m)) throw ConfigError("method listed twice: " + std::string(item));
      out.push_back(m);
    }
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

std::vector<double> parse_values(std::string_view list) {
  std::vector<double> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const auto item = trim(list.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size() || !std::isfinite(v)) {
      throw ConfigError("not a number in value list: '" + std::string(item) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  return out;
}

OutputFormat parse_format(std::string_view name) {
  name = trim(name);
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
  if (spec.values.empty()) throw ConfigError("sweep needs at least one value");
  if (spec.trials < 1) throw ConfigError("trials must be at least 1");
  if (spec.methods.empty()) throw ConfigError("sweep needs at least one method");
  if (spec.max_redraws < 0) throw ConfigError("max_redraws must be nonnegative");
  if (spec.values.size() > 1) {
    const bool up = spec.values[1] > spec.values[0];
    for (std::size_t i = 1; i < spec.values.size(); ++i) {
      const bool ok = up ? spec.values[i] > spec.values[i - 1] : spec.values[i] < spec.values[i - 1];
      if (!ok) throw ConfigError("sweep values must be strictly monotone");
    }
  }
  for (std::size_t i = 0; i < spec.methods.size(); ++i) {
    for (std::size_t j = i + 1; j < spec.methods.size(); ++j) {
      if (spec.methods[i] == spec.methods[j]) throw ConfigError("method listed twice");
    }
  }
  for (const double v : spec.values) validate(config_for_point(spec.base_config, spec.axis, v));
}

SystemConfig config_for_point(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig cfg = resolve(base);
  switch (axis) {
    case SweepAxis::kSnrDb:
      cfg.noise_power = cfg.tx_power / std::pow(10.0, value / 10.0);
      break;
    case SweepAxis::kBandwidthHz:
      cfg.bandwidth_hz = value;
      break;
    case SweepAxis::kNumUsers: {
      if (value < 1.0 || value != std::floor(value)) {
        throw ConfigError("user-count sweep values must be positive integers");
      }
      cfg.num_users = static_cast<int>(value);
      cfg.num_rf = cfg.num_users;
      break;
    }
  }
  return cfg;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t point_index, std::size_t trial_index) {
  return splitmix64(splitmix64(splitmix64(master) ^ point_index) ^ trial_index);
}

TrialResult run_trial(const SystemConfig& cfg_in, std::uint64_t seed,
                      std::span<const Method> methods, int max_redraws) {
  const SystemConfig cfg = resolve(cfg_in);
  validate(cfg);
  const bool need_hybrid = contains(methods, Method::kOmp) || contains(methods, Method::kBsaOmp) ||
                           contains(methods, Method::kSdOracle);

  std::uint64_t attempt_seed = seed;
  for (int attempt = 0; attempt <= max_redraws; ++attempt) {
    if (attempt > 0) attempt_seed = splitmix64(attempt_seed);
    std::mt19937_64 rng(attempt_seed);
    const PathParams paths = draw_paths(cfg, rng);
    const ChannelSet channels = generate_channel(cfg, paths);

    TrialResult out;
    out.redraws = attempt;
    out.seed_used = attempt_seed;
    try {
      if (need_hybrid) {
        BeamformerSet bf = design_omp(cfg, channels);
        if (contains(methods, Method::kBsaOmp)) bf = apply_bsa(channels, std::move(bf));
        if (contains(methods, Method::kSdOracle)) bf = apply_sd_oracle(channels, std::move(bf));
        const auto add = [&](Method method, PrecoderVariant variant) {
          if (!contains(methods, method)) return;
          RateReport r = sum_rate(channels, bf, variant, cfg.tx_power, cfg.noise_power,
                                  cfg.sinr_convention);
          r.seed = attempt_seed;
          out.reports.emplace(method, std::move(r));
        };
        add(Method::kOmp, PrecoderVariant::kPlain);
        add(Method::kBsaOmp, PrecoderVariant::kBsa);
        add(Method::kSdOracle, PrecoderVariant::kSdOracle);
      }
      if (contains(methods, Method::kFullyDigital)) {
        RateReport r = fully_digital_yardstick(channels, cfg.tx_power, cfg.noise_power);
        r.seed = attempt_seed;
        out.reports.emplace(Method::kFullyDigital, std::move(r));
      }
      return out;
    } catch (const RankDeficientError&) {
      continue;
    }
  }
  throw NumericalError("degenerate channel persisted after " + std::to_string(max_redraws) +
                       " redraws (trial seed " + std::to_string(seed) + ")");
}

double SweepResult::mean(double axis_value, Method method) const {
  for (const auto& row : rows) {
    if (row.axis_value == axis_value && row.method == method) return row.mean_sum_rate;
  }
  throw ConfigError("no sweep row for " + std::string(to_string(method)) + " at " +
                    fmt_double(axis_value));
}

SweepResult run_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepResult result;
  result.axis = spec.axis;
  result.config = resolve(spec.base_config);
  result.seed = spec.seed;
  result.trials = spec.trials;

  const std::size_t points = spec.values.size();
  const auto trials = static_cast<std::size_t>(spec.trials);
  std::vector<SystemConfig> point_cfgs;
  point_cfgs.reserve(points);
  for (const double v : spec.values) point_cfgs.push_back(config_for_point(spec.base_config, spec.axis, v));

  // Jobs are (point, trial) pairs; each writes only its own slot.
  std::vector<TrialResult> slots(points * trials);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= slots.size()) return;
      const std::size_t point = job / trials;
      const std::size_t trial = job % trials;
      try {
        slots[job] = run_trial(point_cfgs[point], trial_seed(spec.seed, point, trial), spec.methods,
                               spec.max_redraws);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(slots.size());
        return;
      }
    }
  };

  unsigned workers = spec.threads > 0 ? static_cast<unsigned>(spec.threads)
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, slots.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (std::size_t point = 0; point < points; ++point) {
    const std::string hash = config_hash_hex(point_cfgs[point]);
    for (std::size_t trial = 0; trial < trials; ++trial) {
      result.redraws += slots[point * trials + trial].redraws;
    }
    for (const Method method : spec.methods) {
      std::vector<double> sums;
      sums.reserve(trials);
      for (std::size_t trial = 0; trial < trials; ++trial) {
        sums.push_back(slots[point * trials + trial].reports.at(method).sum_rate);
      }
      const PointStats s = summarize(sums);
      SweepRow row;
      row.axis_value = spec.values[point];
      row.method = method;
      row.mean_sum_rate = s.mean;
      row.std_sum_rate = s.stddev;
      row.per_subcarrier_avg = s.mean / point_cfgs[point].num_subcarriers;
      row.trials = spec.trials;
      row.seed = spec.seed;
      row.config_hash = hash;
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out =
      "axis,axis_value,method,mean_sum_rate,std_sum_rate,per_subcarrier_avg,trials,seed,config_hash\n";
  for (const auto& r : result.rows) {
    out += std::string(to_string(result.axis)) + ',' + fmt_double(r.axis_value) + ',' +
           std::string(to_string(r.method)) + ',' + fmt_double(r.mean_sum_rate) + ',' +
           fmt_double(r.std_sum_rate) + ',' + fmt_double(r.per_subcarrier_avg) + ',' +
           std::to_string(r.trials) + ',' + std::to_string(r.seed) + ',' + r.config_hash + '\n';
  }
  return out;
}

std::string to_json(const SweepResult& result) {
  nlohmann::json config = nlohmann::json::object();
  for (const auto& [k, v] : to_key_values(result.config)) config[k] = v;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : result.rows) {
    rows.push_back({
        {"axis_value", r.axis_value},
        {"method", to_string(r.method)},
        {"mean_sum_rate", r.mean_sum_rate},
        {"std_sum_rate", r.std_sum_rate},
        {"per_subcarrier_avg", r.per_subcarrier_avg},
        {"trials", r.trials},
        {"seed", r.seed},
        {"config_hash", r.config_hash},
    });
  }
  const nlohmann::json j = {
      {"axis", to_string(result.axis)}, {"seed", result.seed},     {"trials", result.trials},
      {"redraws", result.redraws},      {"config", std::move(config)}, {"rows", std::move(rows)},
  };
  return j.dump(2) + "\n";
}

SweepResult sweep_from_json(std::string_view text) {
  SweepResult result;
  try {
    const auto j = nlohmann::json::parse(text);
    result.axis = parse_axis(j.at("axis").get<std::string>());
    result.seed = j.at("seed").get<std::uint64_t>();
    result.trials = j.at("trials").get<int>();
    result.redraws = j.at("redraws").get<int>();
    for (const auto& [k, v] : j.at("config").items()) {
      apply_setting(result.config, k, v.get<std::string>());
    }
    for (const auto& r : j.at("rows")) {
      SweepRow row;
      row.axis_value = r.at("axis_value").get<double>();
      row.method = parse_method(r.at("method").get<std::string>());
      row.mean_sum_rate = r.at("mean_sum_rate").get<double>();
      row.std_sum_rate = r.at("std_sum_rate").get<double>();
      row.per_subcarrier_avg = r.at("per_subcarrier_avg").get<double>();
      row.trials = r.at("trials").get<int>();
      row.seed = r.at("seed").get<std::uint64_t>();
      row.config_hash = r.at("config_hash").get<std::string>();
      result.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed sweep JSON: ") + e.what());
  }
  return result;
}

void emit(const SweepResult& result, OutputFormat format, const std::string& path) {
  const std::string text = format == OutputFormat::kCsv ? to_csv(result) : to_json(result);
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace bsabf
