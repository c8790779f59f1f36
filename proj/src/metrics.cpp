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


#include "bsabf/metrics.hpp"

#include <cmath>

#include <json.hpp>

#include "bsabf/error.hpp"

namespace bsabf {

std::string to_json(const RateReport& report) {
  const nlohmann::json j = {
      {"method", report.method},
      {"sum_rate_bits", report.sum_rate},
      {"per_subcarrier_avg", report.per_subcarrier_avg()},
      {"K", report.num_users()},
      {"M", report.num_subcarriers()},
      {"seed", report.seed},
  };
  return j.dump();
}

LinkPowers link_powers(const ChannelSet& channels, const CMatrix& combiner, const CMatrix& precoder,
                       const CMatrix& baseband_m, int k, int m, SinrConvention convention) {
  const int users = channels.num_users();
  LinkPowers out;
  const Eigen::RowVectorXcd row =
      combiner.col(k).adjoint() * channels.at(k, m) * precoder * baseband_m;
  out.desired = std::norm(row(k));
  for (int i = 0; i < users; ++i) {
    if (i == k) continue;
    if (convention == SinrConvention::kPhysical) {
      out.interference += std::norm(row(i));
    } else {
      const Complex own = combiner.col(i).adjoint() * channels.at(i, m) * precoder *
                          baseband_m.col(i);
      out.interference += std::norm(own);
    }
  }
  return out;
}

double sinr(const ChannelSet& channels, const CMatrix& combiner, const CMatrix& precoder,
            const CMatrix& baseband_m, int k, int m, double tx_power, double noise_power,
            SinrConvention convention) {
  const double per_user = tx_power / channels.num_users();
  const auto p = link_powers(channels, combiner, precoder, baseband_m, k, m, convention);
  return per_user * p.desired / (per_user * p.interference + noise_power);
}

RateReport sum_rate(const ChannelSet& channels, const BeamformerSet& bf, PrecoderVariant variant,
                    double tx_power, double noise_power, SinrConvention convention) {
  const int users = channels.num_users();
  const int subcarriers = channels.num_subcarriers();
  const auto count = static_cast<std::size_t>(subcarriers);

  const std::vector<CMatrix>* baseband = nullptr;
  RateReport report;
  switch (variant) {
    case PrecoderVariant::kPlain:
      baseband = &bf.baseband;
      report.method = "omp";
      break;
    case PrecoderVariant::kBsa:
      baseband = &bf.baseband_bsa;
      report.method = "bsa_omp";
      break;
    case PrecoderVariant::kSdOracle:
      baseband = &bf.sd_baseband;
      report.method = "sd_oracle";
      if (bf.sd_precoders.size() != count || bf.sd_combiners.size() != count) {
        throw DimensionError("sum_rate: subcarrier-dependent oracle has not been designed");
      }
      break;
  }
  if (baseband->size() != count) {
    throw DimensionError("sum_rate: requested precoder variant is missing");
  }

  report.per_user_rate.resize(users, subcarriers);
  for (int m = 0; m < subcarriers; ++m) {
    const auto mi = static_cast<std::size_t>(m);
    const bool sd = variant == PrecoderVariant::kSdOracle;
    const CMatrix& precoder = sd ? bf.sd_precoders[mi] : bf.analog_precoder;
    const CMatrix& combiner = sd ? bf.sd_combiners[mi] : bf.analog_combiner;
    for (int k = 0; k < users; ++k) {
      const double g = sinr(channels, combiner, precoder, (*baseband)[mi], k, m, tx_power,
                            noise_power, convention);
      report.per_user_rate(k, m) = std::log2(1.0 + g);
    }
  }
  report.sum_rate = report.per_user_rate.sum();
  report.power_residual = variant == PrecoderVariant::kSdOracle
                              ? power_constraint_residual(bf.sd_precoders, *baseband)
                              : power_constraint_residual(bf.analog_precoder, *baseband);
  return report;
}

RateReport fully_digital_yardstick(const ChannelSet& channels, double tx_power, double noise_power) {
  const int users = channels.num_users();
  const int subcarriers = channels.num_subcarriers();
  RateReport report;
  report.method = "fully_digital";
  report.per_user_rate.resize(users, subcarriers);
  double power = 0.0;
  for (int m = 0; m < subcarriers; ++m) {
    for (int k = 0; k < users; ++k) {
      const Eigen::JacobiSVD<CMatrix> svd(channels.at(k, m), Eigen::ComputeThinV);
      const double smax = svd.singularValues()(0);
      report.per_user_rate(k, m) =
          std::log2(1.0 + (tx_power / users) * smax * smax / noise_power);
      power += svd.matrixV().col(0).squaredNorm();
    }
  }
  report.sum_rate = report.per_user_rate.sum();
  const double target = static_cast<double>(subcarriers) * users;
  report.power_residual = std::abs(power - target) / target;
  return report;
}

double power_constraint_residual(const CMatrix& analog, std::span<const CMatrix> baseband) {
  if (baseband.empty()) return 0.0;
  double total = 0.0;
  for (const auto& b : baseband) total += (analog * b).squaredNorm();
  const double target = static_cast<double>(baseband.size()) * baseband.front().cols();
  return std::abs(total - target) / target;
}

double power_constraint_residual(std::span<const CMatrix> analog_per_subcarrier,
                                 std::span<const CMatrix> baseband) {
  if (analog_per_subcarrier.size() != baseband.size()) {
    throw DimensionError("power_constraint_residual: list lengths differ");
  }
  if (baseband.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t m = 0; m < baseband.size(); ++m) {
    total += (analog_per_subcarrier[m] * baseband[m]).squaredNorm();
  }
  const double target = static_cast<double>(baseband.size()) * baseband.front().cols();
  return std::abs(total - target) / target;
}

}  // namespace bsabf
