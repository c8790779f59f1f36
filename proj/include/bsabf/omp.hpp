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

#include <span>
#include <vector>

#include "bsabf/channel.hpp"
#include "bsabf/config.hpp"

namespace bsabf {

/// Steering-vector dictionaries on uniform sine-space grids over [-1, 1].
struct Dictionary {
  CMatrix tx_atoms;  // N_T x N_F
  CMatrix rx_atoms;  // N_R x N_W
  std::vector<double> tx_grid;
  std::vector<double> rx_grid;
};

struct AtomPair {
  int tx = -1;
  int rx = -1;
  bool operator==(const AtomPair&) const = default;
};

/// Hybrid beamformers for one channel realization.
///
/// `baseband` comes from the OMP design, `baseband_bsa` from the beam-split
/// correction. The sd_* members hold the subcarrier-dependent oracle (virtual
/// analog stages per subcarrier plus their own ZF baseband) and are filled
/// only when that baseline is requested.
struct BeamformerSet {
  CMatrix analog_precoder;  // F_RF, N_T x N_RF
  CMatrix analog_combiner;  // W_RF, N_R x K
  std::vector<CMatrix> baseband;      // F_BB[m], N_RF x K
  std::vector<CMatrix> baseband_bsa;  // F~_BB[m]
  std::vector<AtomPair> selected_atoms;

  std::vector<CMatrix> sd_precoders;
  std::vector<CMatrix> sd_combiners;
  std::vector<CMatrix> sd_baseband;
};

Dictionary build_dictionaries(const SystemConfig& cfg);

/// Uniform grid of `points` samples over [-1, 1]; a single point sits at 0.
std::vector<double> sine_grid(int points);

/// Column k of entry m: dominant right singular vector of H_k[m], unit norm,
/// first nonzero entry real positive.
std::vector<CMatrix> unconstrained_precoders(const ChannelSet& channels);

/// Column k of entry m: (1/P) (f^H H^H H f + sigma2/P)^{-1} H f with f the
/// matching unconstrained precoder column (MMSE scalar times matched filter).
std::vector<CMatrix> unconstrained_combiners(const ChannelSet& channels,
                                             std::span<const CMatrix> precoders, double tx_power,
                                             double noise_power);

struct AnalogSelection {
  CMatrix analog_precoder;
  CMatrix analog_combiner;
  std::vector<AtomPair> atoms;
};

/// Per-user atom choice maximizing sum_m |d_{p,q}[m]^H g_k[m]| over the
/// subcarrier-scaled dictionaries, evaluated in separable form
/// |D~_F[m]_p^H f| * |D~_W[m]_q^H w|. A transmit atom already taken by an
/// earlier user is excluded; ties go to the smallest (p, q).
AnalogSelection omp_select(std::span<const CMatrix> precoders, std::span<const CMatrix> combiners,
                           const Dictionary& dict, std::span<const double> eta);

/// Selection objective for user k and atom pair (p, q), separable form.
double omp_objective(std::span<const CMatrix> precoders, std::span<const CMatrix> combiners,
                     const Dictionary& dict, std::span<const double> eta, int k, int p, int q);

/// Row k: w_k^H H_k[m] F. Both analog stages are given explicitly so the
/// subcarrier-dependent oracle can reuse it.
CMatrix effective_channel_at(const ChannelSet& channels, int m, const CMatrix& combiner,
                             const CMatrix& precoder);

std::vector<CMatrix> effective_channel(const ChannelSet& channels, const CMatrix& combiner,
                                       const CMatrix& precoder);

/// Moore-Penrose inverse of one effective channel. Throws RankDeficientError
/// when its condition number exceeds 1e10.
CMatrix zero_forcing(const CMatrix& effective);

/// Scales `baseband` so that ||analog * baseband||_F^2 == num_users. An
/// all-zero product is returned unchanged.
CMatrix normalize_baseband(const CMatrix& baseband, const CMatrix& analog, int num_users);

/// F_BB[m] = pinv(H_eff[m]) normalized to ||F_RF F_BB[m]||_F^2 = K, so that
/// the sum over subcarriers equals M K.
std::vector<CMatrix> baseband_zf(std::span<const CMatrix> effective, const CMatrix& analog_precoder);

/// Runs the whole OMP hybrid design on one channel realization.
BeamformerSet design_omp(const SystemConfig& cfg, const ChannelSet& channels);

}  // namespace bsabf
