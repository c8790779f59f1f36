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


#include "bsabf/bsa.hpp"

#include "bsabf/error.hpp"
#include "bsabf/phase_ops.hpp"

namespace bsabf {

namespace {
constexpr double kRankTolerance = 1e-12;
}

CMatrix sd_analog(const CMatrix& analog, double eta_m) { return scale_analog_matrix(analog, eta_m); }

CMatrix analog_least_squares(const CMatrix& analog, const CMatrix& target) {
  if (analog.rows() != target.rows()) {
    throw DimensionError("analog_least_squares: row counts differ");
  }
  if (analog.cols() > analog.rows()) {
    throw RankDeficientError("analog_least_squares: more columns than rows");
  }
  const Eigen::HouseholderQR<CMatrix> qr(analog);
  const auto n = analog.cols();
  const auto r_diag = qr.matrixQR().diagonal().head(n).cwiseAbs();
  if (n > 0 && !(r_diag.minCoeff() > kRankTolerance * r_diag.maxCoeff())) {
    throw RankDeficientError("analog_least_squares: analog precoder lost column rank");
  }
  const CMatrix q = qr.householderQ() * CMatrix::Identity(analog.rows(), n);
  return qr.matrixQR()
      .topLeftCorner(n, n)
      .triangularView<Eigen::Upper>()
      .solve(q.adjoint() * target);
}

CMatrix bsa_baseband_raw(const CMatrix& analog, const CMatrix& baseband, double eta_m) {
  return analog_least_squares(analog, sd_analog(analog, eta_m) * baseband);
}

CMatrix bsa_baseband(const CMatrix& analog, const CMatrix& baseband, double eta_m) {
  return normalize_baseband(bsa_baseband_raw(analog, baseband, eta_m), analog,
                            static_cast<int>(baseband.cols()));
}

BeamformerSet apply_bsa(const ChannelSet& channels, BeamformerSet bf) {
  if (bf.baseband.size() != channels.eta.size()) {
    throw DimensionError("apply_bsa: baseband list length differs from M");
  }
  bf.baseband_bsa.clear();
  bf.baseband_bsa.reserve(bf.baseband.size());
  for (std::size_t m = 0; m < bf.baseband.size(); ++m) {
    bf.baseband_bsa.push_back(bsa_baseband(bf.analog_precoder, bf.baseband[m], channels.eta[m]));
  }
  return bf;
}

BeamformerSet apply_sd_oracle(const ChannelSet& channels, BeamformerSet bf) {
  const auto subcarriers = channels.eta.size();
  bf.sd_precoders.clear();
  bf.sd_combiners.clear();
  bf.sd_baseband.clear();
  for (std::size_t m = 0; m < subcarriers; ++m) {
    CMatrix precoder = sd_analog(bf.analog_precoder, channels.eta[m]);
    CMatrix combiner = scale_analog_matrix(bf.analog_combiner, channels.eta[m]);
    const CMatrix effective =
        effective_channel_at(channels, static_cast<int>(m), combiner, precoder);
    bf.sd_baseband.push_back(normalize_baseband(zero_forcing(effective), precoder,
                                                channels.num_users()));
    bf.sd_precoders.push_back(std::move(precoder));
    bf.sd_combiners.push_back(std::move(combiner));
  }
  return bf;
}

}  // namespace bsabf
