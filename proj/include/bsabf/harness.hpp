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


#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bsabf/config.hpp"
#include "bsabf/metrics.hpp"

namespace bsabf {

enum class SweepAxis { kSnrDb, kBandwidthHz, kNumUsers };
enum class Method { kOmp, kBsaOmp, kSdOracle, kFullyDigital };
enum class OutputFormat { kCsv, kJson };

inline constexpr Method kAllMethods[] = {Method::kOmp, Method::kBsaOmp, Method::kSdOracle,
                                         Method::kFullyDigital};

std::string_view to_string(SweepAxis axis);
std::string_view to_string(Method method);
/// Accepts the short CLI names (snr, bandwidth, users) and the long ones.
SweepAxis parse_axis(std::string_view name);
Method parse_method(std::string_view name);
/// Comma-separated list; "all" selects every method.
std::vector<Method> parse_methods(std::string_view list);
std::vector<double> parse_values(std::string_view list);
OutputFormat parse_format(std::string_view name);

struct SweepSpec {
  SweepAxis axis = SweepAxis::kSnrDb;
  std::vector<double> values;
  int trials = 20;
  std::vector<Method> methods{std::begin(kAllMethods), std::end(kAllMethods)};
  SystemConfig base_config;
  std::uint64_t seed = 1;
  int threads = 0;  // 0: hardware concurrency
  int max_redraws = 10;
};

void validate(const SweepSpec& spec);

/// Config for one sweep point. SNR points set sigma_n2 = P / 10^(snr/10);
/// user points set K = N_RF.
SystemConfig config_for_point(const SystemConfig& base, SweepAxis axis, double value);

/// Deterministic sub-seed for (point, trial) derived from the master seed.
std::uint64_t trial_seed(std::uint64_t master, std::size_t point_index, std::size_t trial_index);

struct TrialResult {
  std::map<Method, RateReport> reports;
  int redraws = 0;
  std::uint64_t seed_used = 0;
};

/// Draws paths, synthesizes the channel, designs every requested method on
/// that same realization and evaluates its rate. A rank-deficient design is
/// redrawn with the next sub-seed, up to `max_redraws` times, then
/// NumericalError is thrown.
TrialResult run_trial(const SystemConfig& cfg, std::uint64_t seed, std::span<const Method> methods,
                      int max_redraws = 10);

struct SweepRow {
  double axis_value = 0.0;
  Method method = Method::kOmp;
  double mean_sum_rate = 0.0;
  double std_sum_rate = 0.0;
  double per_subcarrier_avg = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  std::string config_hash;

  bool operator==(const SweepRow&) const = default;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::kSnrDb;
  std::vector<SweepRow> rows;
  SystemConfig config;  // resolved base config
  std::uint64_t seed = 0;
  int trials = 0;
  int redraws = 0;

  /// Mean sum rate for (axis value, method); throws when absent.
  double mean(double axis_value, Method method) const;
};

SweepResult run_sweep(const SweepSpec& spec);

/// Header: axis,axis_value,method,mean_sum_rate,std_sum_rate,per_subcarrier_avg,trials,seed,config_hash
std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
SweepResult sweep_from_json(std::string_view text);
void emit(const SweepResult& result, OutputFormat format, const std::string& path);

}  // namespace bsabf
