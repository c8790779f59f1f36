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


#include "bsabf/bsabf.h"

#include <cmath>
#include <cstring>
#include <limits>
#include <new>
#include <stdexcept>
#include <string>

#include "bsabf/channel.hpp"
#include "bsabf/config.hpp"
#include "bsabf/error.hpp"
#include "bsabf/harness.hpp"

struct bsabf_config {
  bsabf::SystemConfig cfg;
};

struct bsabf_sweep_result {
  bsabf::SweepResult result;
};

namespace {

thread_local std::string g_last_error;

bsabf_status fail(bsabf_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
bsabf_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return BSABF_OK;
  } catch (const bsabf::ConfigError& e) {
    return fail(BSABF_ERR_CONFIG, e.what());
  } catch (const bsabf::DimensionError& e) {
    return fail(BSABF_ERR_CONFIG, e.what());
  } catch (const bsabf::NumericalError& e) {
    return fail(BSABF_ERR_NUMERICAL, e.what());
  } catch (const bsabf::IoError& e) {
    return fail(BSABF_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BSABF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BSABF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BSABF_ERR_INTERNAL, "unknown error");
  }
}

bsabf_status copy_out(const std::string& s, char* buf, size_t buf_len, size_t* needed) {
  if (needed != nullptr) *needed = s.size() + 1;
  if (buf == nullptr) return BSABF_OK;
  if (buf_len == 0) return fail(BSABF_ERR_INVALID_ARGUMENT, "buffer too small");
  const size_t n = std::min(s.size(), buf_len - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
  if (n < s.size()) return fail(BSABF_ERR_INVALID_ARGUMENT, "buffer too small");
  return BSABF_OK;
}

unsigned method_bit(bsabf::Method m) { return 1u << static_cast<unsigned>(m); }

std::vector<bsabf::Method> methods_from_bits(unsigned bits) {
  std::vector<bsabf::Method> out;
  for (const auto m : bsabf::kAllMethods) {
    if (bits & method_bit(m)) out.push_back(m);
  }
  return out;
}

}  // namespace

extern "C" {

const char* bsabf_version(void) { return "1.0.0"; }

const char* bsabf_last_error(void) { return g_last_error.c_str(); }

const char* bsabf_status_string(bsabf_status status) {
  switch (status) {
    case BSABF_OK: return "ok";
    case BSABF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BSABF_ERR_CONFIG: return "configuration error";
    case BSABF_ERR_NUMERICAL: return "numerical failure";
    case BSABF_ERR_IO: return "i/o error";
    case BSABF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* bsabf_method_name(unsigned method_bit_value) {
  for (const auto m : bsabf::kAllMethods) {
    if (method_bit(m) == method_bit_value) return bsabf::to_string(m).data();
  }
  return nullptr;
}

bsabf_status bsabf_parse_methods(const char* list, unsigned* out) {
  if (list == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    unsigned bits = 0;
    for (const auto m : bsabf::parse_methods(list)) bits |= method_bit(m);
    if (bits == 0) throw bsabf::ConfigError("empty method list");
    *out = bits;
  });
}

bsabf_status bsabf_parse_axis(const char* name, bsabf_axis* out) {
  if (name == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = static_cast<bsabf_axis>(bsabf::parse_axis(name)); });
}

bsabf_status bsabf_config_create(const char* profile, bsabf_config** out) {
  if (out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null output handle");
  *out = nullptr;
  return guarded([&] {
    const auto p = profile == nullptr ? bsabf::Profile::kDesk : bsabf::parse_profile(profile);
    *out = new bsabf_config{bsabf::profile_config(p)};
  });
}

bsabf_status bsabf_config_clone(const bsabf_config* cfg, bsabf_config** out) {
  if (cfg == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new bsabf_config{cfg->cfg}; });
}

void bsabf_config_destroy(bsabf_config* cfg) { delete cfg; }

bsabf_status bsabf_config_load_file(bsabf_config* cfg, const char* path) {
  if (cfg == nullptr || path == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    bsabf::SystemConfig next = cfg->cfg;
    bsabf::load_config_file(next, path);
    cfg->cfg = next;
  });
}

bsabf_status bsabf_config_set(bsabf_config* cfg, const char* key, const char* value) {
  if (cfg == nullptr || key == nullptr || value == nullptr) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] { bsabf::apply_setting(cfg->cfg, key, value); });
}

bsabf_status bsabf_config_validate(const bsabf_config* cfg) {
  if (cfg == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null config");
  return guarded([&] { bsabf::validate(bsabf::resolve(cfg->cfg)); });
}

bsabf_status bsabf_config_hash(const bsabf_config* cfg, uint64_t* out) {
  if (cfg == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = bsabf::config_hash(bsabf::resolve(cfg->cfg)); });
}

bsabf_status bsabf_config_get(const bsabf_config* cfg, const char* key, char* buf, size_t buf_len,
                              size_t* needed) {
  if (cfg == nullptr || key == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  std::string value;
  const auto st = guarded([&] { value = bsabf::get_setting(bsabf::resolve(cfg->cfg), key); });
  if (st != BSABF_OK) return st;
  return copy_out(value, buf, buf_len, needed);
}

bsabf_status bsabf_config_to_text(const bsabf_config* cfg, char* buf, size_t buf_len,
                                  size_t* needed) {
  if (cfg == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null config");
  std::string text;
  const auto st = guarded([&] { text = bsabf::to_config_text(bsabf::resolve(cfg->cfg)); });
  if (st != BSABF_OK) return st;
  return copy_out(text, buf, buf_len, needed);
}

bsabf_status bsabf_subcarrier_frequencies(const bsabf_config* cfg, double* out, size_t len) {
  if (cfg == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto resolved = bsabf::resolve(cfg->cfg);
    bsabf::validate(resolved);
    const auto freqs = bsabf::subcarrier_frequencies(resolved);
    if (len < freqs.size()) throw std::invalid_argument("output buffer shorter than M");
    std::copy(freqs.begin(), freqs.end(), out);
  });
}

bsabf_status bsabf_array_gain_curve(const bsabf_config* cfg, double phi, int subcarrier,
                                    size_t points, double* phi_bar_out, double* gain_out) {
  if (cfg == nullptr || phi_bar_out == nullptr || gain_out == nullptr) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  if (points < 2 || points > static_cast<size_t>(std::numeric_limits<int>::max())) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "need at least 2 grid points");
  }
  return guarded([&] {
    const auto resolved = bsabf::resolve(cfg->cfg);
    bsabf::validate(resolved);
    if (!(std::abs(phi) <= 1.0)) throw bsabf::ConfigError("phi must lie in [-1, 1]");
    if (subcarrier < 0 || subcarrier >= resolved.num_subcarriers) {
      throw bsabf::ConfigError("subcarrier index out of range");
    }
    const auto curve =
        bsabf::array_gain_curve(resolved, phi, subcarrier, static_cast<int>(points));
    for (size_t i = 0; i < curve.size(); ++i) {
      phi_bar_out[i] = curve[i].phi_bar;
      gain_out[i] = curve[i].gain;
    }
  });
}

bsabf_status bsabf_run_trial(const bsabf_config* cfg, uint64_t seed, unsigned methods,
                             double sum_rates[BSABF_NUM_METHODS], int* redraws) {
  if (cfg == nullptr || sum_rates == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  if ((methods & BSABF_METHOD_ALL) == 0 || (methods & ~BSABF_METHOD_ALL) != 0) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "invalid method mask");
  }
  return guarded([&] {
    const auto list = methods_from_bits(methods);
    const auto trial = bsabf::run_trial(cfg->cfg, seed, list);
    for (int i = 0; i < BSABF_NUM_METHODS; ++i) sum_rates[i] = std::nan("");
    for (const auto& [m, report] : trial.reports) {
      sum_rates[static_cast<int>(m)] = report.sum_rate;
    }
    if (redraws != nullptr) *redraws = trial.redraws;
  });
}

bsabf_status bsabf_run_sweep(const bsabf_config* cfg, const bsabf_sweep_spec* spec,
                             bsabf_sweep_result** out) {
  if (cfg == nullptr || spec == nullptr || out == nullptr) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  if (spec->values == nullptr && spec->num_values > 0) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "null value list");
  }
  if ((spec->methods & ~BSABF_METHOD_ALL) != 0) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "invalid method mask");
  }
  if (spec->axis < BSABF_AXIS_SNR_DB || spec->axis > BSABF_AXIS_NUM_USERS) {
    return fail(BSABF_ERR_INVALID_ARGUMENT, "invalid sweep axis");
  }
  return guarded([&] {
    bsabf::SweepSpec s;
    s.axis = static_cast<bsabf::SweepAxis>(spec->axis);
    s.values.assign(spec->values, spec->values + spec->num_values);
    s.trials = spec->trials;
    s.methods = methods_from_bits(spec->methods);
    s.base_config = cfg->cfg;
    s.seed = spec->seed;
    s.threads = spec->threads;
    s.max_redraws = spec->max_redraws < 0 ? 10 : spec->max_redraws;
    *out = new bsabf_sweep_result{bsabf::run_sweep(s)};
  });
}

void bsabf_sweep_result_destroy(bsabf_sweep_result* result) { delete result; }

size_t bsabf_sweep_result_num_rows(const bsabf_sweep_result* result) {
  return result == nullptr ? 0 : result->result.rows.size();
}

int bsabf_sweep_result_redraws(const bsabf_sweep_result* result) {
  return result == nullptr ? 0 : result->result.redraws;
}

bsabf_status bsabf_sweep_result_row(const bsabf_sweep_result* result, size_t index,
                                    bsabf_sweep_row* out) {
  if (result == nullptr || out == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= result->result.rows.size()) return fail(BSABF_ERR_INVALID_ARGUMENT, "row index out of range");
  const auto& r = result->result.rows[index];
  out->axis_value = r.axis_value;
  out->method = method_bit(r.method);
  out->mean_sum_rate = r.mean_sum_rate;
  out->std_sum_rate = r.std_sum_rate;
  out->per_subcarrier_avg = r.per_subcarrier_avg;
  out->trials = r.trials;
  out->seed = r.seed;
  std::memset(out->config_hash, 0, sizeof(out->config_hash));
  std::memcpy(out->config_hash, r.config_hash.data(),
              std::min(r.config_hash.size(), sizeof(out->config_hash) - 1));
  return BSABF_OK;
}

bsabf_status bsabf_sweep_result_write(const bsabf_sweep_result* result, bsabf_format format,
                                      const char* path) {
  if (result == nullptr || path == nullptr) return fail(BSABF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    bsabf::emit(result->result,
                format == BSABF_FORMAT_JSON ? bsabf::OutputFormat::kJson : bsabf::OutputFormat::kCsv,
                path);
  });
}

}  // extern "C"
