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

#include "bsabf/channel.hpp"
#include "bsabf/omp.hpp"

namespace bsabf {

/// Virtual subcarrier-dependent analog precoder: every column of `analog`
/// with its unwrapped phases scaled by eta_m.
CMatrix sd_analog(const CMatrix& analog, double eta_m);

/// Least-squares X minimizing ||analog X - target||_F, computed from a
/// reduced QR factorization of `analog`. Throws RankDeficientError when
/// `analog` loses column rank.
CMatrix analog_least_squares(const CMatrix& analog, const CMatrix& target);

/// Beam-split-aware baseband for one subcarrier: pinv(F_RF) F_RF_sd[m] F_BB[m]
/// before renormalization to ||F_RF F~_BB||_F^2 = K.
CMatrix bsa_baseband_raw(const CMatrix& analog, const CMatrix& baseband, double eta_m);
CMatrix bsa_baseband(const CMatrix& analog, const CMatrix& baseband, double eta_m);

/// Returns a copy of `bf` with baseband_bsa filled for every subcarrier.
BeamformerSet apply_bsa(const ChannelSet& channels, BeamformerSet bf);

/// Fills the sd_* members: per-subcarrier phase-scaled analog precoder and
/// combiner with a ZF baseband recomputed on their effective channel. This is
/// an idealized reference that a single set of phase shifters cannot realize.
BeamformerSet apply_sd_oracle(const ChannelSet& channels, BeamformerSet bf);

}  // namespace bsabf
