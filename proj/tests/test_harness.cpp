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


#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bsabf/error.hpp"
#include "bsabf/harness.hpp"

using namespace bsabf;

namespace {

SystemConfig small_desk() {
  SystemConfig cfg;
  cfg.num_tx = 32;
  cfg.num_subcarriers = 8;
  return cfg;
}

SweepSpec small_spec(SweepAxis axis, std::vector<double> values, int trials = 3) {
  SweepSpec spec;
  spec.axis = axis;
  spec.values = std::move(values);
  spec.trials = trials;
  spec.base_config = small_desk();
  spec.seed = 9;
  return spec;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("name parsing") {
  CHECK(parse_axis("snr") == SweepAxis::kSnrDb);
  CHECK(parse_axis("bandwidth_hz") == SweepAxis::kBandwidthHz);
  CHECK(parse_axis("users") == SweepAxis::kNumUsers);
  CHECK_THROWS_AS(parse_axis("power"), ConfigError);
  CHECK(parse_methods("all").size() == 4);
  CHECK(parse_methods("bsa_omp, omp") == std::vector<Method>{Method::kBsaOmp, Method::kOmp});
  CHECK_THROWS_AS(parse_methods("omp,omp"), ConfigError);
  CHECK_THROWS_AS(parse_methods("omp,mmse"), ConfigError);
  CHECK(parse_values("-10, 0,1e1") == std::vector<double>{-10.0, 0.0, 10.0});
  CHECK_THROWS_AS(parse_values("1,,2"), ConfigError);
  CHECK(parse_format("json") == OutputFormat::kJson);
  CHECK_THROWS_AS(parse_format("xml"), ConfigError);
  for (auto m : kAllMethods) CHECK(parse_method(to_string(m)) == m);
}

TEST_CASE("sweep specs are validated") {
  auto spec = small_spec(SweepAxis::kSnrDb, {0.0, 10.0});
  CHECK_NOTHROW(validate(spec));
  spec.values = {0.0, 0.0};
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.values = {10.0, 0.0, 5.0};
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec.values = {10.0, 0.0};
  CHECK_NOTHROW(validate(spec));
  spec.values.clear();
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec = small_spec(SweepAxis::kNumUsers, {2.0, 2.5});
  CHECK_THROWS_AS(validate(spec), ConfigError);
  spec = small_spec(SweepAxis::kSnrDb, {0.0});
  spec.trials = 0;
  CHECK_THROWS_AS(validate(spec), ConfigError);
}

TEST_CASE("sweep points derive their configs") {
  const auto base = small_desk();
  const auto snr = config_for_point(base, SweepAxis::kSnrDb, 10.0);
  CHECK(snr.noise_power == doctest::Approx(0.1));
  CHECK(snr.tx_power == 1.0);
  CHECK(config_for_point(base, SweepAxis::kBandwidthHz, 50e9).bandwidth_hz == 50e9);
  const auto users = config_for_point(base, SweepAxis::kNumUsers, 8.0);
  CHECK(users.num_users == 8);
  CHECK(users.num_rf == 8);
  CHECK(users.num_rx == base.num_rx);
}

TEST_CASE("trial seeds are deterministic and distinct") {
  std::set<std::uint64_t> seen;
  for (std::size_t p = 0; p < 10; ++p)
    for (std::size_t t = 0; t < 100; ++t) seen.insert(trial_seed(1, p, t));
  CHECK(seen.size() == 1000);
  CHECK(trial_seed(5, 2, 3) == trial_seed(5, 2, 3));
  CHECK(trial_seed(5, 2, 3) != trial_seed(6, 2, 3));
}

TEST_CASE("trials are reproducible and paired") {
  const auto cfg = small_desk();
  const std::vector<Method> all(std::begin(kAllMethods), std::end(kAllMethods));
  const auto a = run_trial(cfg, 1234, all);
  const auto b = run_trial(cfg, 1234, all);
  REQUIRE(a.reports.size() == 4);
  for (auto m : kAllMethods) {
    CHECK(a.reports.at(m).sum_rate == b.reports.at(m).sum_rate);
    CHECK(a.reports.at(m).seed == a.seed_used);
  }
  const std::vector<Method> only{Method::kFullyDigital};
  CHECK(run_trial(cfg, 1234, only).reports.at(Method::kFullyDigital).sum_rate ==
        a.reports.at(Method::kFullyDigital).sum_rate);
}

TEST_CASE("narrowband trials give identical OMP and BSA rates") {
  auto cfg = small_desk();
  cfg.bandwidth_hz = 0.0;
  const std::vector<Method> both{Method::kOmp, Method::kBsaOmp};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto t = run_trial(cfg, seed, both);
    CHECK(t.reports.at(Method::kBsaOmp).sum_rate ==
          doctest::Approx(t.reports.at(Method::kOmp).sum_rate).epsilon(1e-12));
  }
}

TEST_CASE("degenerate geometry exhausts the redraw cap") {
  // two transmit atoms at -1 and +1 are the same vector, so F_RF loses rank
  SystemConfig cfg;
  cfg.num_tx = 2;
  cfg.num_rx = 2;
  cfg.num_users = cfg.num_rf = 2;
  cfg.num_subcarriers = 2;
  cfg.dict_tx_size = 2;
  const std::vector<Method> omp{Method::kOmp};
  CHECK_THROWS_AS(run_trial(cfg, 1, omp, 3), NumericalError);
  auto spec = small_spec(SweepAxis::kSnrDb, {0.0}, 1);
  spec.base_config = cfg;
  spec.methods = omp;
  spec.max_redraws = 2;
  CHECK_THROWS_AS(run_sweep(spec), NumericalError);
}

TEST_CASE("single-point sweep yields one row per method") {
  const auto result = run_sweep(small_spec(SweepAxis::kSnrDb, {0.0}, 1));
  REQUIRE(result.rows.size() == 4);
  for (const auto& row : result.rows) {
    CHECK(row.trials == 1);
    CHECK(row.std_sum_rate == 0.0);
    CHECK(std::isfinite(row.mean_sum_rate));
    CHECK(row.per_subcarrier_avg == doctest::Approx(row.mean_sum_rate / 8));
  }
}

TEST_CASE("sweep results do not depend on the thread count") {
  auto spec = small_spec(SweepAxis::kBandwidthHz, {1e9, 30e9}, 4);
  spec.threads = 1;
  const auto serial = run_sweep(spec);
  spec.threads = 3;
  const auto parallel = run_sweep(spec);
  CHECK(serial.rows == parallel.rows);
  spec.seed = 10;
  CHECK_FALSE(run_sweep(spec).rows == serial.rows);
}

TEST_CASE("rows carry per-point hashes and statistics") {
  const auto result = run_sweep(small_spec(SweepAxis::kSnrDb, {-10.0, 10.0}, 3));
  REQUIRE(result.rows.size() == 8);
  CHECK(result.rows[0].config_hash != result.rows[4].config_hash);
  CHECK(result.rows[0].config_hash == result.rows[3].config_hash);
  for (const auto& row : result.rows) CHECK(row.std_sum_rate >= 0.0);
  CHECK(result.mean(10.0, Method::kFullyDigital) > result.mean(-10.0, Method::kFullyDigital));
  CHECK_THROWS_AS(result.mean(5.0, Method::kOmp), ConfigError);
}

TEST_CASE("CSV layout") {
  const auto result = run_sweep(small_spec(SweepAxis::kSnrDb, {0.0}, 2));
  const auto lines = split_lines(to_csv(result));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] ==
        "axis,axis_value,method,mean_sum_rate,std_sum_rate,per_subcarrier_avg,trials,seed,config_hash");
  CHECK(lines[1].rfind("snr_db,0,omp,", 0) == 0);
  CHECK(std::count(lines[1].begin(), lines[1].end(), ',') == 8);

  SweepResult empty;
  CHECK(split_lines(to_csv(empty)).size() == 1);
}

TEST_CASE("JSON round trip") {
  const auto result = run_sweep(small_spec(SweepAxis::kNumUsers, {2.0, 4.0}, 2));
  const auto text = to_json(result);
  const auto back = sweep_from_json(text);
  CHECK(back.axis == result.axis);
  CHECK(back.rows == result.rows);
  CHECK(back.seed == result.seed);
  CHECK(back.trials == result.trials);
  CHECK(back.redraws == result.redraws);
  CHECK(to_key_values(back.config) == to_key_values(result.config));
  const auto j = nlohmann::json::parse(text);
  CHECK(j.at("config").at("N_T") == "32");
  CHECK_THROWS_AS(sweep_from_json("{\"rows\": 3}"), ConfigError);
}

TEST_CASE("emit writes files and reports failures") {
  const auto result = run_sweep(small_spec(SweepAxis::kSnrDb, {0.0}, 1));
  const auto path = std::filesystem::temp_directory_path() / "bsabf_emit_test.json";
  emit(result, OutputFormat::kJson, path.string());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(sweep_from_json(buf.str()).rows == result.rows);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(emit(result, OutputFormat::kCsv, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("per-user rate does not grow with the number of users") {
  SweepSpec spec;
  spec.axis = SweepAxis::kNumUsers;
  spec.values = {2.0, 4.0, 8.0};
  spec.trials = 20;
  spec.methods = {Method::kOmp, Method::kBsaOmp, Method::kSdOracle};
  spec.base_config = small_desk();
  const auto result = run_sweep(spec);
  for (auto m : spec.methods) {
    double prev = std::numeric_limits<double>::infinity();
    for (double k : spec.values) {
      const double per_user = result.mean(k, m) / k;
      CHECK_MESSAGE(per_user <= prev, to_string(m), " K=", k);
      prev = per_user;
    }
  }
}
