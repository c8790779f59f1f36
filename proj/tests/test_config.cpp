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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "bsabf/config.hpp"
#include "bsabf/error.hpp"

using namespace bsabf;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST_CASE("desk defaults") {
  const auto cfg = resolve(profile_config(Profile::kDesk));
  CHECK(cfg.num_tx == 64);
  CHECK(cfg.num_rx == 4);
  CHECK(cfg.num_rf == 4);
  CHECK(cfg.num_users == 4);
  CHECK(cfg.num_subcarriers == 32);
  CHECK(cfg.num_paths == 3);
  CHECK(cfg.dict_tx_size == 128);
  CHECK(cfg.dict_rx_size == 8);
  CHECK(cfg.element_spacing_m == doctest::Approx(kSpeedOfLight / 600e9));
  CHECK(spacing_factor(cfg) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("large profile") {
  const auto cfg = resolve(profile_config(parse_profile("paper")));
  CHECK(cfg.num_tx == 128);
  CHECK(cfg.num_users == 8);
  CHECK(cfg.num_rf == 8);
  CHECK(cfg.num_subcarriers == 128);
  CHECK_THROWS_AS(parse_profile("lab"), ConfigError);
}

TEST_CASE("derived fields follow later edits") {
  auto cfg = profile_config(Profile::kDesk);
  apply_setting(cfg, "f_c", "150e9");
  apply_setting(cfg, "N_T", "32");
  const auto r = resolve(cfg);
  CHECK(r.element_spacing_m == doctest::Approx(kSpeedOfLight / 300e9));
  CHECK(r.dict_tx_size == 64);
  CHECK(resolve(r).element_spacing_m == r.element_spacing_m);
}

TEST_CASE("validation rejects inconsistent settings") {
  const auto base = resolve(profile_config(Profile::kDesk));
  auto expect_bad = [&](auto mutate) {
    auto cfg = base;
    mutate(cfg);
    CHECK_THROWS_AS(validate(cfg), ConfigError);
  };
  expect_bad([](SystemConfig& c) { c.carrier_hz = 0.0; });
  expect_bad([](SystemConfig& c) { c.bandwidth_hz = -1.0; });
  expect_bad([](SystemConfig& c) { c.bandwidth_hz = 2.0 * c.carrier_hz; });
  expect_bad([](SystemConfig& c) { c.num_rf = 3; });
  expect_bad([](SystemConfig& c) { c.num_users = c.num_rf = 65; });
  expect_bad([](SystemConfig& c) { c.num_paths = 0; });
  expect_bad([](SystemConfig& c) { c.noise_power = 0.0; });
  expect_bad([](SystemConfig& c) { c.distance_m = -2.0; });
  expect_bad([](SystemConfig& c) { c.dict_rx_size = 2; });
  expect_bad([](SystemConfig& c) { c.absorption_table = {{3e11, 0.1}, {2e11, 0.1}}; });
}

TEST_CASE("setting parser rejects malformed values") {
  SystemConfig cfg;
  CHECK_THROWS_AS(apply_setting(cfg, "M", "3.5"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "f_c", "fast"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "f_c", "inf"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "seed", "-1"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "normalize_path_gain", "maybe"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "sinr_convention", "other"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "colour", "1"), ConfigError);
  apply_setting(cfg, " sinr_convention ", " as_printed ");
  CHECK(cfg.sinr_convention == SinrConvention::kAsPrinted);
}

TEST_CASE("config text with comments and both separators") {
  SystemConfig cfg;
  apply_config_text(cfg,
                    "# desk variant\n"
                    "N_T = 32   # fewer antennas\n"
                    "\n"
                    "B: 10e9\n"
                    "seed=77\n");
  CHECK(cfg.num_tx == 32);
  CHECK(cfg.bandwidth_hz == 10e9);
  CHECK(cfg.seed == 77);
  CHECK_THROWS_AS(apply_config_text(cfg, "N_T 32\n"), ConfigError);
}

TEST_CASE("canonical text round trips exactly") {
  auto cfg = resolve(profile_config(Profile::kPaper));
  cfg.bandwidth_hz = 12345.678901234567e6;
  cfg.noise_power = 0.1;
  cfg.absorption_table = {{2.9e11, 0.015}, {3.1e11, 0.02}};
  cfg.sinr_convention = SinrConvention::kAsPrinted;
  SystemConfig back;
  apply_config_text(back, to_config_text(cfg));
  CHECK(to_key_values(back) == to_key_values(cfg));
  CHECK(config_hash(back) == config_hash(cfg));
  CHECK(back.bandwidth_hz == cfg.bandwidth_hz);
}

TEST_CASE("config hash changes with every field") {
  const auto base = resolve(profile_config(Profile::kDesk));
  const auto base_hash = config_hash(base);
  CHECK(config_hash_hex(base).size() == 16);
  std::set<std::uint64_t> seen{base_hash};
  const std::vector<std::pair<std::string, std::string>> flips{
      {"f_c", "301e9"},       {"B", "31e9"},
      {"M", "33"},            {"N_T", "65"},
      {"N_R", "5"},           {"N_RF", "3"},
      {"K", "3"},             {"L", "4"},
      {"d_spacing", "6e-4"},  {"P", "2"},
      {"sigma_n2", "0.5"},    {"d_bar", "11"},
      {"k_abs", "0.01"},      {"N_F", "100"},
      {"N_W", "9"},           {"seed", "2"},
      {"nlos_penalty_db", "9"}, {"max_excess_delay", "1e-8"},
      {"normalize_path_gain", "false"}, {"sinr_convention", "as_printed"},
      {"absorption_table", "3e11:0.1"},
  };
  CHECK(flips.size() == to_key_values(base).size());
  for (const auto& [key, value] : flips) {
    auto cfg = base;
    apply_setting(cfg, key, value);
    const auto h = config_hash(cfg);
    CHECK_MESSAGE(h != base_hash, key);
    CHECK_MESSAGE(seen.insert(h).second, key);
    apply_setting(cfg, key, get_setting(base, key));
    CHECK_MESSAGE(config_hash(cfg) == base_hash, key);
  }
}

TEST_CASE("absorption table from CSV") {
  const auto path = temp_file("bsabf_absorption_test.csv",
                              "frequency_hz,k_abs_per_m\n2.9e11, 0.01\n3.1e11,0.03\n");
  const auto table = read_absorption_table(path.string());
  REQUIRE(table.size() == 2);
  CHECK(table[1].frequency_hz == 3.1e11);
  CHECK(table[1].k_abs_per_m == 0.03);

  SystemConfig cfg;
  apply_setting(cfg, "absorption_table", path.string());
  CHECK(absorption_at(cfg, 3e11) == doctest::Approx(0.02));
  apply_setting(cfg, "absorption_table", "none");
  CHECK(cfg.absorption_table.empty());

  const auto bad = temp_file("bsabf_absorption_bad.csv", "2.9e11\n");
  CHECK_THROWS_AS(read_absorption_table(bad.string()), ConfigError);
  CHECK_THROWS_AS(read_absorption_table("/nonexistent/table.csv"), IoError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}

TEST_CASE("config file loading") {
  const auto path = temp_file("bsabf_config_test.cfg", "K = 2\nN_RF = 2\n");
  auto cfg = profile_config(Profile::kDesk);
  load_config_file(cfg, path.string());
  CHECK(cfg.num_users == 2);
  CHECK(cfg.num_tx == 64);
  CHECK_THROWS_AS(load_config_file(cfg, "/nonexistent/bsabf.cfg"), ConfigError);
  std::filesystem::remove(path);
}
