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
#include <span>
#include <string>

#include <Eigen/Dense>

#include "bsabf/channel.hpp"
#include "bsabf/config.hpp"
#include "bsabf/omp.hpp"

namespace bsabf {

enum class PrecoderVariant {
  kPlain,     // F_RF, W_RF, F_BB
  kBsa,       // F_RF, W_RF, F~_BB
  kSdOracle,  // per-subcarrier virtual analog stages with their own ZF
};

struct RateReport {
  std::string method;
  Eigen::MatrixXd per_user_rate;  // K x M, log2(1 + gamma) in bits/s/Hz
  double sum_rate = 0.0;
  double power_residual = 0.0;
  std::uint64_t seed = 0;

  int num_users() const { return static_cast<int>(per_user_rate.rows()); }
  int num_subcarriers() const { return static_cast<int>(per_user_rate.cols()); }
  double per_subcarrier_avg() const {
    return num_subcarriers() > 0 ? sum_rate / num_subcarriers() : 0.0;
  }
};

/// {method, sum_rate_bits, per_subcarrier_avg, K, M, seed}
std::string to_json(const RateReport& report);

struct LinkPowers {
  double desired = 0.0;       // |w_k^H H_k F f_k|^2
  double interference = 0.0;  // sum over i != k, per the chosen convention
};

LinkPowers link_powers(const ChannelSet& channels, const CMatrix& combiner, const CMatrix& precoder,
                       const CMatrix& baseband_m, int k, int m,
                       SinrConvention convention = SinrConvention::kPhysical);

/// gamma_k[m] = (P/K) desired / ((P/K) interference + sigma2).
double sinr(const ChannelSet& channels, const CMatrix& combiner, const CMatrix& precoder,
            const CMatrix& baseband_m, int k, int m, double tx_power, double noise_power,
            SinrConvention convention = SinrConvention::kPhysical);

/// R = sum_m sum_k log2(1 + gamma_k[m]) for the requested precoder variant.
/// Throws DimensionError when that variant has not been designed.
RateReport sum_rate(const ChannelSet& channels, const BeamformerSet& bf, PrecoderVariant variant,
                    double tx_power, double noise_power,
                    SinrConvention convention = SinrConvention::kPhysical);

/// Interference-free bound: each user transmits on its dominant singular mode
/// with power P/K.
RateReport fully_digital_yardstick(const ChannelSet& channels, double tx_power, double noise_power);

/// |sum_m ||F_RF F_BB[m]||_F^2 - M K| / (M K), with K the baseband width.
double power_constraint_residual(const CMatrix& analog, std::span<const CMatrix> baseband);
double power_constraint_residual(std::span<const CMatrix> analog_per_subcarrier,
                                 std::span<const CMatrix> baseband);

}  // namespace bsabf
