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


#include "bsabf/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "bsabf/error.hpp"

namespace bsabf {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError("config key '" + std::string(key) + "': not a finite number: '" +
                      std::string(v) + "'");
  }
  return out;
}

int parse_int(std::string_view key, std::string_view v) {
  v = trim(v);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || out < 0 || out > 1'000'000) {
    throw ConfigError("config key '" + std::string(key) + "': not a valid count: '" +
                      std::string(v) + "'");
  }
  return static_cast<int>(out);
}

std::uint64_t parse_u64(std::string_view key, std::string_view v) {
  v = trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ConfigError("config key '" + std::string(key) + "': not an unsigned integer: '" +
                      std::string(v) + "'");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config key '" + std::string(key) + "': not a boolean: '" + std::string(v) +
                    "'");
}

std::string fmt_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string fmt_table(const std::vector<AbsorptionPoint>& table) {
  std::string out;
  for (const auto& p : table) {
    if (!out.empty()) out += ';';
    out += fmt_double(p.frequency_hz) + ':' + fmt_double(p.k_abs_per_m);
  }
  return out;
}

// Inline table form "f1:k1;f2:k2", the canonical serialization of a loaded table.
std::vector<AbsorptionPoint> parse_inline_table(std::string_view v) {
  std::vector<AbsorptionPoint> table;
  while (!v.empty()) {
    const auto semi = v.find(';');
    const auto item = trim(v.substr(0, semi));
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) {
      throw ConfigError("absorption_table: malformed inline entry '" + std::string(item) + "'");
    }
    table.push_back({parse_double("absorption_table", item.substr(0, colon)),
                     parse_double("absorption_table", item.substr(colon + 1))});
    if (semi == std::string_view::npos) break;
    v.remove_prefix(semi + 1);
  }
  return table;
}

}  // namespace

std::string_view to_string(SinrConvention c) {
  return c == SinrConvention::kPhysical ? "physical" : "as_printed";
}

SystemConfig profile_config(Profile profile) {
  SystemConfig cfg;
  if (profile == Profile::kPaper) {
    cfg.num_tx = 128;
    cfg.num_rx = 8;
    cfg.num_rf = 8;
    cfg.num_users = 8;
    cfg.num_subcarriers = 128;
  }
  return cfg;
}

Profile parse_profile(std::string_view name) {
  if (name == "desk") return Profile::kDesk;
  if (name == "paper") return Profile::kPaper;
  throw ConfigError("unknown profile '" + std::string(name) + "' (expected desk or paper)");
}

SystemConfig resolve(SystemConfig cfg) {
  if (cfg.element_spacing_m == 0.0 && cfg.carrier_hz > 0.0) {
    cfg.element_spacing_m = kSpeedOfLight / (2.0 * cfg.carrier_hz);
  }
  if (cfg.dict_tx_size == 0) cfg.dict_tx_size = 2 * cfg.num_tx;
  if (cfg.dict_rx_size == 0) cfg.dict_rx_size = 2 * cfg.num_rx;
  return cfg;
}

void validate(const SystemConfig& cfg) {
  auto fail = [](const std::string& msg) { throw ConfigError(msg); };
  if (!(cfg.carrier_hz > 0.0)) fail("f_c must be positive");
  if (!(cfg.bandwidth_hz >= 0.0)) fail("B must be nonnegative");
  if (!(cfg.bandwidth_hz < 2.0 * cfg.carrier_hz)) fail("B must be below 2 f_c");
  if (cfg.num_subcarriers < 1) fail("M must be at least 1");
  if (cfg.num_tx < 1 || cfg.num_rx < 1) fail("N_T and N_R must be at least 1");
  if (cfg.num_users < 1) fail("K must be at least 1");
  if (cfg.num_rf != cfg.num_users) fail("N_RF must equal K");
  if (cfg.num_users > cfg.num_tx) fail("K must not exceed N_T");
  if (cfg.num_paths < 1) fail("L must be at least 1");
  if (!(cfg.element_spacing_m > 0.0)) fail("d_spacing must be positive");
  if (!(cfg.tx_power > 0.0)) fail("P must be positive");
  if (!(cfg.noise_power > 0.0)) fail("sigma_n2 must be positive");
  if (!(cfg.distance_m > 0.0)) fail("d_bar must be positive");
  if (!(cfg.absorption_per_m >= 0.0)) fail("k_abs must be nonnegative");
  if (cfg.dict_tx_size < cfg.num_rf) fail("N_F must be at least N_RF");
  if (cfg.dict_rx_size < cfg.num_users) fail("N_W must be at least K");
  if (!(cfg.max_excess_delay_s >= 0.0)) fail("max_excess_delay must be nonnegative");
  if (!std::isfinite(cfg.nlos_penalty_db)) fail("nlos_penalty_db must be finite");
  for (std::size_t i = 0; i < cfg.absorption_table.size(); ++i) {
    const auto& p = cfg.absorption_table[i];
    if (!(p.k_abs_per_m >= 0.0)) fail("absorption_table: negative coefficient");
    if (i > 0 && !(p.frequency_hz > cfg.absorption_table[i - 1].frequency_hz)) {
      fail("absorption_table: frequencies must be strictly increasing");
    }
  }
}

double spacing_factor(const SystemConfig& cfg) {
  if (cfg.element_spacing_m == 0.0) return 1.0;
  return 2.0 * cfg.element_spacing_m * cfg.carrier_hz / kSpeedOfLight;
}

double absorption_at(const SystemConfig& cfg, double frequency_hz) {
  const auto& t = cfg.absorption_table;
  if (t.empty()) return cfg.absorption_per_m;
  if (frequency_hz <= t.front().frequency_hz) return t.front().k_abs_per_m;
  if (frequency_hz >= t.back().frequency_hz) return t.back().k_abs_per_m;
  const auto hi = std::upper_bound(
      t.begin(), t.end(), frequency_hz,
      [](double f, const AbsorptionPoint& p) { return f < p.frequency_hz; });
  const auto lo = hi - 1;
  const double w = (frequency_hz - lo->frequency_hz) / (hi->frequency_hz - lo->frequency_hz);
  return lo->k_abs_per_m + w * (hi->k_abs_per_m - lo->k_abs_per_m);
}

std::vector<AbsorptionPoint> read_absorption_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open absorption table '" + path + "'");
  std::vector<AbsorptionPoint> table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected two columns");
    }
    const auto first = trim(body.substr(0, comma));
    // header row
    if (table.empty() && !first.empty() && (std::isalpha(static_cast<unsigned char>(first[0])))) {
      continue;
    }
    table.push_back({parse_double("frequency_hz", first),
                     parse_double("k_abs_per_m", body.substr(comma + 1))});
  }
  if (table.empty()) throw ConfigError("absorption table '" + path + "' has no rows");
  return table;
}

void apply_setting(SystemConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  if (key == "f_c") cfg.carrier_hz = parse_double(key, value);
  else if (key == "B") cfg.bandwidth_hz = parse_double(key, value);
  else if (key == "M") cfg.num_subcarriers = parse_int(key, value);
  else if (key == "N_T") cfg.num_tx = parse_int(key, value);
  else if (key == "N_R") cfg.num_rx = parse_int(key, value);
  else if (key == "N_RF") cfg.num_rf = parse_int(key, value);
  else if (key == "K") cfg.num_users = parse_int(key, value);
  else if (key == "L") cfg.num_paths = parse_int(key, value);
  else if (key == "d_spacing") cfg.element_spacing_m = parse_double(key, value);
  else if (key == "P") cfg.tx_power = parse_double(key, value);
  else if (key == "sigma_n2") cfg.noise_power = parse_double(key, value);
  else if (key == "d_bar") cfg.distance_m = parse_double(key, value);
  else if (key == "k_abs") cfg.absorption_per_m = parse_double(key, value);
  else if (key == "N_F") cfg.dict_tx_size = parse_int(key, value);
  else if (key == "N_W") cfg.dict_rx_size = parse_int(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "nlos_penalty_db") cfg.nlos_penalty_db = parse_double(key, value);
  else if (key == "max_excess_delay") cfg.max_excess_delay_s = parse_double(key, value);
  else if (key == "normalize_path_gain") cfg.normalize_path_gain = parse_bool(key, value);
  else if (key == "sinr_convention") {
    const auto v = trim(value);
    if (v == "physical") cfg.sinr_convention = SinrConvention::kPhysical;
    else if (v == "as_printed") cfg.sinr_convention = SinrConvention::kAsPrinted;
    else throw ConfigError("sinr_convention must be physical or as_printed");
  } else if (key == "absorption_table") {
    const auto v = trim(value);
    if (v.empty() || v == "none") cfg.absorption_table.clear();
    else if (v.find(':') != std::string_view::npos && v.find(',') == std::string_view::npos &&
             v.find('/') == std::string_view::npos)
      cfg.absorption_table = parse_inline_table(v);
    else cfg.absorption_table = read_absorption_table(std::string(v));
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

std::string get_setting(const SystemConfig& cfg, std::string_view key) {
  for (const auto& [k, v] : to_key_values(cfg)) {
    if (k == key) return v;
  }
  throw ConfigError("unknown config key '" + std::string(key) + "'");
}

void apply_config_text(SystemConfig& cfg, std::string_view text) {
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto sep = line.find('=');
    if (sep == std::string_view::npos) sep = line.find(':');
    if (sep == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(cfg, line.substr(0, sep), line.substr(sep + 1));
  }
}

void load_config_file(SystemConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

std::vector<std::pair<std::string, std::string>> to_key_values(const SystemConfig& cfg) {
  return {
      {"f_c", fmt_double(cfg.carrier_hz)},
      {"B", fmt_double(cfg.bandwidth_hz)},
      {"M", std::to_string(cfg.num_subcarriers)},
      {"N_T", std::to_string(cfg.num_tx)},
      {"N_R", std::to_string(cfg.num_rx)},
      {"N_RF", std::to_string(cfg.num_rf)},
      {"K", std::to_string(cfg.num_users)},
      {"L", std::to_string(cfg.num_paths)},
      {"d_spacing", fmt_double(cfg.element_spacing_m)},
      {"P", fmt_double(cfg.tx_power)},
      {"sigma_n2", fmt_double(cfg.noise_power)},
      {"d_bar", fmt_double(cfg.distance_m)},
      {"k_abs", fmt_double(cfg.absorption_per_m)},
      {"N_F", std::to_string(cfg.dict_tx_size)},
      {"N_W", std::to_string(cfg.dict_rx_size)},
      {"seed", std::to_string(cfg.seed)},
      {"nlos_penalty_db", fmt_double(cfg.nlos_penalty_db)},
      {"max_excess_delay", fmt_double(cfg.max_excess_delay_s)},
      {"normalize_path_gain", cfg.normalize_path_gain ? "true" : "false"},
      {"sinr_convention", std::string(to_string(cfg.sinr_convention))},
      {"absorption_table", cfg.absorption_table.empty() ? "none" : fmt_table(cfg.absorption_table)},
  };
}

std::string to_config_text(const SystemConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : to_key_values(cfg)) out += k + " = " + v + "\n";
  return out;
}

std::uint64_t config_hash(const SystemConfig& cfg) {
  std::uint64_t h = 14695981039346656037ull;
  for (const unsigned char c : to_config_text(cfg)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash_hex(const SystemConfig& cfg) {
  char buf[17];
  const auto v = config_hash(cfg);
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 0; i < 16; ++i) buf[i] = kHex[(v >> (60 - 4 * i)) & 0xF];
  buf[16] = '\0';
  return buf;
}

}  // namespace bsabf
