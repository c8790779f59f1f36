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

#include <bsabf/bsabf.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace {

struct Config {
  bsabf_config* ptr = nullptr;
  explicit Config(const char* profile = nullptr) {
    REQUIRE(bsabf_config_create(profile, &ptr) == BSABF_OK);
  }
  ~Config() { bsabf_config_destroy(ptr); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;
};

std::string get(const bsabf_config* cfg, const char* key) {
  size_t needed = 0;
  REQUIRE(bsabf_config_get(cfg, key, nullptr, 0, &needed) == BSABF_OK);
  std::string out(needed, '\0');
  REQUIRE(bsabf_config_get(cfg, key, out.data(), out.size(), &needed) == BSABF_OK);
  out.resize(needed - 1);
  return out;
}

}  // namespace

TEST_CASE("C API: metadata") {
  CHECK(std::strlen(bsabf_version()) > 0);
  CHECK(std::string(bsabf_status_string(BSABF_ERR_NUMERICAL)) == "numerical failure");
  CHECK(std::string(bsabf_method_name(BSABF_METHOD_BSA_OMP)) == "bsa_omp");
  CHECK(bsabf_method_name(3u) == nullptr);
  unsigned bits = 0;
  CHECK(bsabf_parse_methods("omp,fully_digital", &bits) == BSABF_OK);
  CHECK(bits == (BSABF_METHOD_OMP | BSABF_METHOD_FULLY_DIGITAL));
  CHECK(bsabf_parse_methods("all", &bits) == BSABF_OK);
  CHECK(bits == BSABF_METHOD_ALL);
  CHECK(bsabf_parse_methods("nope", &bits) == BSABF_ERR_CONFIG);
  CHECK(std::string(bsabf_last_error()).find("nope") != std::string::npos);
  bsabf_axis axis{};
  CHECK(bsabf_parse_axis("bandwidth", &axis) == BSABF_OK);
  CHECK(axis == BSABF_AXIS_BANDWIDTH_HZ);
  CHECK(bsabf_parse_axis(nullptr, &axis) == BSABF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: configuration handles") {
  Config cfg;
  CHECK(get(cfg.ptr, "N_T") == "64");
  CHECK(get(cfg.ptr, "N_F") == "128");
  CHECK(bsabf_config_set(cfg.ptr, "N_T", "32") == BSABF_OK);
  CHECK(get(cfg.ptr, "N_F") == "64");
  CHECK(bsabf_config_set(cfg.ptr, "N_T", "many") == BSABF_ERR_CONFIG);
  CHECK(bsabf_config_set(cfg.ptr, "bogus", "1") == BSABF_ERR_CONFIG);
  CHECK(bsabf_config_validate(cfg.ptr) == BSABF_OK);

  uint64_t h1 = 0, h2 = 0;
  CHECK(bsabf_config_hash(cfg.ptr, &h1) == BSABF_OK);
  bsabf_config* copy = nullptr;
  REQUIRE(bsabf_config_clone(cfg.ptr, &copy) == BSABF_OK);
  CHECK(bsabf_config_hash(copy, &h2) == BSABF_OK);
  CHECK(h1 == h2);
  CHECK(bsabf_config_set(copy, "K", "3") == BSABF_OK);
  CHECK(bsabf_config_validate(copy) == BSABF_ERR_CONFIG);
  bsabf_config_destroy(copy);

  Config paper("paper");
  CHECK(get(paper.ptr, "M") == "128");
  bsabf_config* bad = nullptr;
  CHECK(bsabf_config_create("huge", &bad) == BSABF_ERR_CONFIG);
  CHECK(bad == nullptr);
}

TEST_CASE("C API: string buffers") {
  Config cfg;
  size_t needed = 0;
  REQUIRE(bsabf_config_to_text(cfg.ptr, nullptr, 0, &needed) == BSABF_OK);
  std::string text(needed, '\0');
  REQUIRE(bsabf_config_to_text(cfg.ptr, text.data(), text.size(), &needed) == BSABF_OK);
  CHECK(text.find("N_T = 64") != std::string::npos);
  char small[8];
  CHECK(bsabf_config_to_text(cfg.ptr, small, sizeof small, &needed) == BSABF_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(small) == 7);
}

TEST_CASE("C API: config files") {
  const auto path = std::filesystem::temp_directory_path() / "bsabf_capi_test.cfg";
  std::ofstream(path) << "M = 16\nB = 20e9\n";
  Config cfg;
  CHECK(bsabf_config_load_file(cfg.ptr, path.string().c_str()) == BSABF_OK);
  CHECK(get(cfg.ptr, "M") == "16");
  std::ofstream(path) << "M = 16\nB = twenty\n";
  CHECK(bsabf_config_load_file(cfg.ptr, path.string().c_str()) == BSABF_ERR_CONFIG);
  CHECK(get(cfg.ptr, "B") == "2e+10");
  std::filesystem::remove(path);
}

TEST_CASE("C API: grid and array gain") {
  Config cfg;
  REQUIRE(bsabf_config_set(cfg.ptr, "M", "5") == BSABF_OK);
  std::vector<double> freqs(5);
  REQUIRE(bsabf_subcarrier_frequencies(cfg.ptr, freqs.data(), freqs.size()) == BSABF_OK);
  CHECK(freqs[2] == 300e9);
  CHECK(bsabf_subcarrier_frequencies(cfg.ptr, freqs.data(), 4) == BSABF_ERR_INVALID_ARGUMENT);

  std::vector<double> phi_bar(129), gain(129);
  REQUIRE(bsabf_array_gain_curve(cfg.ptr, 0.5, 2, 129, phi_bar.data(), gain.data()) == BSABF_OK);
  CHECK(phi_bar.front() == -1.0);
  CHECK(phi_bar.back() == 1.0);
  CHECK(gain[96] == doctest::Approx(1.0).epsilon(1e-12));  // phi_bar = 0.5
  CHECK(bsabf_array_gain_curve(cfg.ptr, 0.5, 5, 129, phi_bar.data(), gain.data()) == BSABF_ERR_CONFIG);
  CHECK(bsabf_array_gain_curve(cfg.ptr, 1.5, 0, 129, phi_bar.data(), gain.data()) == BSABF_ERR_CONFIG);
  CHECK(bsabf_array_gain_curve(cfg.ptr, 0.5, 0, 1, phi_bar.data(), gain.data()) ==
        BSABF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: trials") {
  Config cfg;
  REQUIRE(bsabf_config_set(cfg.ptr, "N_T", "32") == BSABF_OK);
  REQUIRE(bsabf_config_set(cfg.ptr, "M", "8") == BSABF_OK);
  double rates[BSABF_NUM_METHODS];
  int redraws = -1;
  REQUIRE(bsabf_run_trial(cfg.ptr, 5, BSABF_METHOD_OMP | BSABF_METHOD_FULLY_DIGITAL, rates,
                          &redraws) == BSABF_OK);
  CHECK(redraws >= 0);
  CHECK(rates[0] > 0.0);
  CHECK(std::isnan(rates[1]));
  CHECK(std::isnan(rates[2]));
  CHECK(rates[3] >= rates[0]);
  CHECK(bsabf_run_trial(cfg.ptr, 5, 0, rates, nullptr) == BSABF_ERR_INVALID_ARGUMENT);
  CHECK(bsabf_run_trial(cfg.ptr, 5, 0x10u, rates, nullptr) == BSABF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("C API: degenerate designs map to the numerical status") {
  Config cfg;
  for (const auto& [k, v] : {std::pair{"N_T", "2"}, {"N_R", "2"}, {"K", "2"}, {"N_RF", "2"},
                             {"M", "2"}, {"N_F", "2"}}) {
    REQUIRE(bsabf_config_set(cfg.ptr, k, v) == BSABF_OK);
  }
  double rates[BSABF_NUM_METHODS];
  CHECK(bsabf_run_trial(cfg.ptr, 1, BSABF_METHOD_OMP, rates, nullptr) == BSABF_ERR_NUMERICAL);
}

TEST_CASE("C API: sweeps") {
  Config cfg;
  REQUIRE(bsabf_config_set(cfg.ptr, "N_T", "32") == BSABF_OK);
  REQUIRE(bsabf_config_set(cfg.ptr, "M", "8") == BSABF_OK);
  const double values[] = {-5.0, 5.0};
  bsabf_sweep_spec spec{};
  spec.axis = BSABF_AXIS_SNR_DB;
  spec.values = values;
  spec.num_values = 2;
  spec.trials = 2;
  spec.methods = BSABF_METHOD_OMP | BSABF_METHOD_BSA_OMP;
  spec.seed = 3;
  spec.threads = 2;
  spec.max_redraws = -1;
  bsabf_sweep_result* result = nullptr;
  REQUIRE(bsabf_run_sweep(cfg.ptr, &spec, &result) == BSABF_OK);
  REQUIRE(bsabf_sweep_result_num_rows(result) == 4);
  bsabf_sweep_row row{};
  REQUIRE(bsabf_sweep_result_row(result, 1, &row) == BSABF_OK);
  CHECK(row.axis_value == -5.0);
  CHECK(row.method == BSABF_METHOD_BSA_OMP);
  CHECK(row.trials == 2);
  CHECK(std::strlen(row.config_hash) == 16);
  CHECK(bsabf_sweep_result_row(result, 4, &row) == BSABF_ERR_INVALID_ARGUMENT);
  CHECK(bsabf_sweep_result_redraws(result) >= 0);

  const auto path = std::filesystem::temp_directory_path() / "bsabf_capi_sweep.csv";
  CHECK(bsabf_sweep_result_write(result, BSABF_FORMAT_CSV, path.string().c_str()) == BSABF_OK);
  CHECK(std::filesystem::file_size(path) > 100);
  std::filesystem::remove(path);
  CHECK(bsabf_sweep_result_write(result, BSABF_FORMAT_JSON, "/nonexistent-dir/x.json") ==
        BSABF_ERR_IO);
  bsabf_sweep_result_destroy(result);

  const double unsorted[] = {5.0, 5.0};
  spec.values = unsorted;
  result = nullptr;
  CHECK(bsabf_run_sweep(cfg.ptr, &spec, &result) == BSABF_ERR_CONFIG);
  CHECK(result == nullptr);
  CHECK(bsabf_sweep_result_num_rows(nullptr) == 0);
}
