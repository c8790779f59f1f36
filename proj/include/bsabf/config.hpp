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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bsabf {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class SinrConvention {
  kPhysical,   // interference at user k: sum_{i!=k} |w_k^H H_k F_RF f_i|^2
  kAsPrinted,  // sum_{i!=k} |w_i^H H_i F_RF f_i|^2
};

enum class Profile { kDesk, kPaper };

/// One row of a per-frequency absorption table (Hz, 1/m).
struct AbsorptionPoint {
  double frequency_hz = 0.0;
  double k_abs_per_m = 0.0;
};

/// All dimensional and physical parameters of one simulated downlink.
///
/// Zero in `element_spacing_m`, `dict_tx_size` or `dict_rx_size` means
/// "derive from the other fields"; resolve() fills them in.
struct SystemConfig {
  double carrier_hz = 300e9;
  double bandwidth_hz = 30e9;
  int num_subcarriers = 32;
  int num_tx = 64;
  int num_rx = 4;
  int num_rf = 4;
  int num_users = 4;
  int num_paths = 3;
  double element_spacing_m = 0.0;  // half carrier wavelength when 0
  double tx_power = 1.0;
  double noise_power = 1.0;
  double distance_m = 10.0;
  double absorption_per_m = 0.0;
  int dict_tx_size = 0;  // 2 * num_tx when 0
  int dict_rx_size = 0;  // 2 * num_rx when 0
  std::uint64_t seed = 1;

  double nlos_penalty_db = 10.0;
  double max_excess_delay_s = 20e-9;
  bool normalize_path_gain = true;
  SinrConvention sinr_convention = SinrConvention::kPhysical;
  std::vector<AbsorptionPoint> absorption_table;  // overrides absorption_per_m
};

/// Preset with derived fields left on auto, so later edits to f_c, N_T or
/// N_R still propagate through resolve().
SystemConfig profile_config(Profile profile);
Profile parse_profile(std::string_view name);

/// Fills derived fields. Idempotent.
SystemConfig resolve(SystemConfig cfg);

/// Throws ConfigError on any violated invariant. Expects a resolved config.
void validate(const SystemConfig& cfg);

/// 2 d f_c / c0; equals 1 for half-wavelength spacing (and for auto spacing).
double spacing_factor(const SystemConfig& cfg);

/// Absorption coefficient at `frequency_hz`: table interpolation when a table
/// is present (clamped at the ends), the flat coefficient otherwise.
double absorption_at(const SystemConfig& cfg, double frequency_hz);

/// Two-column CSV (frequency_hz, k_abs_per_m); optional header line.
std::vector<AbsorptionPoint> read_absorption_table(const std::string& path);

// Flat key-value config text. Keys are the short field names
// (f_c, B, M, N_T, N_R, N_RF, K, L, d_spacing, P, sigma_n2, d_bar, k_abs,
// N_F, N_W, seed) plus nlos_penalty_db, max_excess_delay, normalize_path_gain,
// sinr_convention and absorption_table (a CSV path).
void apply_setting(SystemConfig& cfg, std::string_view key, std::string_view value);
std::string get_setting(const SystemConfig& cfg, std::string_view key);
void apply_config_text(SystemConfig& cfg, std::string_view text);
void load_config_file(SystemConfig& cfg, const std::string& path);

/// Canonical, ordered key/value serialization (round-trip exact doubles).
std::vector<std::pair<std::string, std::string>> to_key_values(const SystemConfig& cfg);
std::string to_config_text(const SystemConfig& cfg);

/// 64-bit FNV-1a over the canonical serialization.
std::uint64_t config_hash(const SystemConfig& cfg);
std::string config_hash_hex(const SystemConfig& cfg);

std::string_view to_string(SinrConvention c);

}  // namespace bsabf
