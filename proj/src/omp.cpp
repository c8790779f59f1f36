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


#include "bsabf/omp.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bsabf/error.hpp"
#include "bsabf/phase_ops.hpp"

namespace bsabf {

namespace {

constexpr double kRankTolerance = 1e-10;

bool all_finite(const CMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

// Makes the first entry with non-negligible magnitude real positive.
void fix_phase(CVector& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-8 * peak) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = Complex(std::abs(v(i)), 0.0);
      return;
    }
  }
}

CMatrix atoms_on_grid(int antennas, const std::vector<double>& grid) {
  CMatrix atoms(antennas, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    atoms.col(static_cast<Eigen::Index>(j)) = steering_vector(antennas, grid[j]);
  }
  return atoms;
}

}  // namespace

std::vector<double> sine_grid(int points) {
  if (points < 1) throw ConfigError("dictionary grid needs at least one point");
  std::vector<double> grid(static_cast<std::size_t>(points), 0.0);
  if (points == 1) return grid;
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] = -1.0 + 2.0 * i / (points - 1);
  }
  return grid;
}

Dictionary build_dictionaries(const SystemConfig& cfg) {
  if (cfg.dict_tx_size < 1 || cfg.dict_rx_size < 1) {
    throw ConfigError("dictionary sizes N_F and N_W must be at least 1");
  }
  Dictionary dict;
  dict.tx_grid = sine_grid(cfg.dict_tx_size);
  dict.rx_grid = sine_grid(cfg.dict_rx_size);
  dict.tx_atoms = atoms_on_grid(cfg.num_tx, dict.tx_grid);
  dict.rx_atoms = atoms_on_grid(cfg.num_rx, dict.rx_grid);
  return dict;
}

std::vector<CMatrix> unconstrained_precoders(const ChannelSet& channels) {
  const int users = channels.num_users();
  const int subcarriers = channels.num_subcarriers();
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(subcarriers));
  for (int m = 0; m < subcarriers; ++m) {
    const auto tx = channels.at(0, m).cols();
    CMatrix f(tx, users);
    for (int k = 0; k < users; ++k) {
      const CMatrix& h = channels.at(k, m);
      if (!all_finite(h)) {
        throw NumericalError("unconstrained_precoders: non-finite channel for user " +
                             std::to_string(k));
      }
      Eigen::JacobiSVD<CMatrix> svd(h, Eigen::ComputeThinV);
      CVector v = svd.matrixV().col(0);
      fix_phase(v);
      f.col(k) = v;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<CMatrix> unconstrained_combiners(const ChannelSet& channels,
                                             std::span<const CMatrix> precoders, double tx_power,
                                             double noise_power) {
  const int users = channels.num_users();
  const int subcarriers = channels.num_subcarriers();
  if (static_cast<int>(precoders.size()) != subcarriers) {
    throw DimensionError("unconstrained_combiners: precoder list length differs from M");
  }
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(subcarriers));
  for (int m = 0; m < subcarriers; ++m) {
    const auto& f = precoders[static_cast<std::size_t>(m)];
    if (f.cols() != users) throw DimensionError("unconstrained_combiners: precoder has wrong width");
    CMatrix w(channels.at(0, m).rows(), users);
    for (int k = 0; k < users; ++k) {
      const CVector hf = channels.at(k, m) * f.col(k);
      const double scale = (1.0 / tx_power) / (hf.squaredNorm() + noise_power / tx_power);
      w.col(k) = scale * hf;
    }
    out.push_back(std::move(w));
  }
  return out;
}

AnalogSelection omp_select(std::span<const CMatrix> precoders, std::span<const CMatrix> combiners,
                           const Dictionary& dict, std::span<const double> eta) {
  const auto tx_atoms = dict.tx_atoms.cols();
  const auto rx_atoms = dict.rx_atoms.cols();
  if (tx_atoms == 0 || rx_atoms == 0) throw ConfigError("omp_select: empty dictionary");
  if (precoders.size() != eta.size() || combiners.size() != eta.size() || eta.empty()) {
    throw DimensionError("omp_select: precoder, combiner and ratio lists must have length M");
  }
  const auto users = precoders.front().cols();
  if (users > tx_atoms) throw ConfigError("omp_select: fewer transmit atoms than users");

  std::vector<Eigen::MatrixXd> score(static_cast<std::size_t>(users),
                                     Eigen::MatrixXd::Zero(tx_atoms, rx_atoms));
  for (std::size_t m = 0; m < eta.size(); ++m) {
    const CMatrix tx_scaled = scale_analog_matrix(dict.tx_atoms, eta[m]);
    const CMatrix rx_scaled = scale_analog_matrix(dict.rx_atoms, eta[m]);
    const Eigen::MatrixXd tx_corr = (tx_scaled.adjoint() * precoders[m]).cwiseAbs();
    const Eigen::MatrixXd rx_corr = (rx_scaled.adjoint() * combiners[m]).cwiseAbs();
    for (Eigen::Index k = 0; k < users; ++k) {
      score[static_cast<std::size_t>(k)].noalias() += tx_corr.col(k) * rx_corr.col(k).transpose();
    }
  }

  AnalogSelection sel;
  sel.analog_precoder.resize(dict.tx_atoms.rows(), users);
  sel.analog_combiner.resize(dict.rx_atoms.rows(), users);
  std::vector<bool> taken(static_cast<std::size_t>(tx_atoms), false);
  for (Eigen::Index k = 0; k < users; ++k) {
    const auto& s = score[static_cast<std::size_t>(k)];
    AtomPair best;
    double best_value = -std::numeric_limits<double>::infinity();
    for (Eigen::Index p = 0; p < tx_atoms; ++p) {
      if (taken[static_cast<std::size_t>(p)]) continue;
      for (Eigen::Index q = 0; q < rx_atoms; ++q) {
        if (s(p, q) > best_value) {
          best_value = s(p, q);
          best = {static_cast<int>(p), static_cast<int>(q)};
        }
      }
    }
    taken[static_cast<std::size_t>(best.tx)] = true;
    sel.atoms.push_back(best);
    sel.analog_precoder.col(k) = dict.tx_atoms.col(best.tx);
    sel.analog_combiner.col(k) = dict.rx_atoms.col(best.rx);
  }
  return sel;
}

double omp_objective(std::span<const CMatrix> precoders, std::span<const CMatrix> combiners,
                     const Dictionary& dict, std::span<const double> eta, int k, int p, int q) {
  double total = 0.0;
  for (std::size_t m = 0; m < eta.size(); ++m) {
    const CVector tx = scale_beamformer(dict.tx_atoms.col(p), eta[m]);
    const CVector rx = scale_beamformer(dict.rx_atoms.col(q), eta[m]);
    total += std::abs(tx.dot(precoders[m].col(k))) * std::abs(rx.dot(combiners[m].col(k)));
  }
  return total;
}

CMatrix effective_channel_at(const ChannelSet& channels, int m, const CMatrix& combiner,
                             const CMatrix& precoder) {
  const int users = channels.num_users();
  if (combiner.cols() != users) throw DimensionError("effective_channel: combiner needs K columns");
  const CMatrix& h0 = channels.at(0, m);
  if (combiner.rows() != h0.rows() || precoder.rows() != h0.cols()) {
    throw DimensionError("effective_channel: analog stage sizes do not match the channel");
  }
  CMatrix out(users, precoder.cols());
  for (int k = 0; k < users; ++k) {
    out.row(k) = combiner.col(k).adjoint() * channels.at(k, m) * precoder;
  }
  return out;
}

std::vector<CMatrix> effective_channel(const ChannelSet& channels, const CMatrix& combiner,
                                       const CMatrix& precoder) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(channels.num_subcarriers()));
  for (int m = 0; m < channels.num_subcarriers(); ++m) {
    out.push_back(effective_channel_at(channels, m, combiner, precoder));
  }
  return out;
}

CMatrix zero_forcing(const CMatrix& effective) {
  if (!all_finite(effective)) throw NumericalError("zero_forcing: non-finite effective channel");
  Eigen::JacobiSVD<CMatrix> svd(effective, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const auto rank = std::min(effective.rows(), effective.cols());
  if (sv.size() < rank || !(sv(0) > 0.0) || sv(rank - 1) <= kRankTolerance * sv(0)) {
    throw RankDeficientError("zero_forcing: effective channel is rank deficient");
  }
  const Eigen::VectorXd inv = sv.head(rank).cwiseInverse();
  return svd.matrixV().leftCols(rank) * inv.asDiagonal() * svd.matrixU().leftCols(rank).adjoint();
}

CMatrix normalize_baseband(const CMatrix& baseband, const CMatrix& analog, int num_users) {
  const double norm = (analog * baseband).norm();
  if (!(norm > 0.0)) return baseband;
  return baseband * (std::sqrt(static_cast<double>(num_users)) / norm);
}

std::vector<CMatrix> baseband_zf(std::span<const CMatrix> effective, const CMatrix& analog_precoder) {
  std::vector<CMatrix> out;
  out.reserve(effective.size());
  for (const auto& h : effective) {
    out.push_back(normalize_baseband(zero_forcing(h), analog_precoder, static_cast<int>(h.rows())));
  }
  return out;
}

BeamformerSet design_omp(const SystemConfig& cfg, const ChannelSet& channels) {
  const auto precoders = unconstrained_precoders(channels);
  const auto combiners =
      unconstrained_combiners(channels, precoders, cfg.tx_power, cfg.noise_power);
  const Dictionary dict = build_dictionaries(cfg);
  AnalogSelection sel = omp_select(precoders, combiners, dict, channels.eta);

  BeamformerSet bf;
  bf.analog_precoder = std::move(sel.analog_precoder);
  bf.analog_combiner = std::move(sel.analog_combiner);
  bf.selected_atoms = std::move(sel.atoms);
  bf.baseband =
      baseband_zf(effective_channel(channels, bf.analog_combiner, bf.analog_precoder),
                  bf.analog_precoder);
  return bf;
}

}  // namespace bsabf
