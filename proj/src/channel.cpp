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


#include "bsabf/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bsabf/error.hpp"
#include "bsabf/phase_ops.hpp"

namespace bsabf {

using std::numbers::pi;

std::vector<double> subcarrier_frequencies(const SystemConfig& cfg) {
  const int m_count = cfg.num_subcarriers;
  if (m_count < 1) throw ConfigError("M must be at least 1");
  std::vector<double> freqs(static_cast<std::size_t>(m_count));
  const double spacing = cfg.bandwidth_hz / m_count;
  const double center = (m_count - 1) / 2.0;
  for (int m = 0; m < m_count; ++m) {
    freqs[static_cast<std::size_t>(m)] = cfg.carrier_hz + spacing * (m - center);
  }
  return freqs;
}

std::vector<double> frequency_ratios(const SystemConfig& cfg) {
  auto eta = subcarrier_frequencies(cfg);
  for (auto& f : eta) f /= cfg.carrier_hz;
  return eta;
}

int central_subcarrier(int num_subcarriers) { return (num_subcarriers - 1) / 2; }

double spatial_direction(double phi, double eta) { return eta * phi; }

double beam_split_deviation(double phi, double eta) { return (eta - 1.0) * phi; }

CVector steering_vector(int n, double psi) {
  if (n < 1) throw DimensionError("steering_vector: N must be at least 1");
  CVector a(n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) a(i) = std::polar(scale, -pi * i * psi);
  return a;
}

double path_gain(double frequency_hz, double distance_m, double absorption_per_m) {
  if (!(frequency_hz > 0.0)) throw ConfigError("path_gain: frequency must be positive");
  if (!(distance_m > 0.0)) throw ConfigError("path_gain: distance must be positive");
  if (!(absorption_per_m >= 0.0)) throw ConfigError("path_gain: absorption must be nonnegative");
  const double spreading = kSpeedOfLight / (4.0 * pi * frequency_hz * distance_m);
  return spreading * std::exp(-0.5 * absorption_per_m * distance_m);
}

std::vector<double> gain_profile(const SystemConfig& cfg) {
  const double ref =
      path_gain(cfg.carrier_hz, cfg.distance_m, absorption_at(cfg, cfg.carrier_hz));
  auto profile = subcarrier_frequencies(cfg);
  for (auto& f : profile) f = path_gain(f, cfg.distance_m, absorption_at(cfg, f)) / ref;
  return profile;
}

PathParams draw_paths(const SystemConfig& cfg, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-pi / 2.0, pi / 2.0);
  std::uniform_real_distribution<double> excess(0.0, cfg.max_excess_delay_s);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));

  const double amplitude =
      cfg.normalize_path_gain
          ? 1.0
          : path_gain(cfg.carrier_hz, cfg.distance_m, absorption_at(cfg, cfg.carrier_hz));
  const double nlos = std::pow(10.0, -cfg.nlos_penalty_db / 20.0);
  const double los_delay = cfg.distance_m / kSpeedOfLight;

  PathParams out;
  out.paths.resize(static_cast<std::size_t>(cfg.num_users));
  for (auto& user : out.paths) {
    user.resize(static_cast<std::size_t>(cfg.num_paths));
    for (std::size_t l = 0; l < user.size(); ++l) {
      auto& p = user[l];
      p.doa = std::sin(angle(rng));
      p.dod = std::sin(angle(rng));
      const double re = gauss(rng);
      const double im = gauss(rng);
      p.is_los = (l == 0);
      p.gain = Complex(re, im) * amplitude * (p.is_los ? 1.0 : nlos);
      p.delay_s = los_delay + (p.is_los || cfg.max_excess_delay_s == 0.0 ? 0.0 : excess(rng));
    }
  }
  return out;
}

void validate_paths(const SystemConfig& cfg, const PathParams& paths) {
  if (paths.num_users() != cfg.num_users) {
    throw DimensionError("paths describe " + std::to_string(paths.num_users()) +
                         " users, config has K = " + std::to_string(cfg.num_users));
  }
  for (int k = 0; k < paths.num_users(); ++k) {
    const auto& user = paths.paths[static_cast<std::size_t>(k)];
    if (static_cast<int>(user.size()) != cfg.num_paths) {
      throw DimensionError("user " + std::to_string(k) + " has " + std::to_string(user.size()) +
                           " paths, config has L = " + std::to_string(cfg.num_paths));
    }
    int los = 0;
    for (const auto& p : user) {
      if (!(std::abs(p.doa) <= 1.0) || !(std::abs(p.dod) <= 1.0)) {
        throw ConfigError("path direction outside [-1, 1] for user " + std::to_string(k));
      }
      if (!std::isfinite(p.gain.real()) || !std::isfinite(p.gain.imag()) ||
          !std::isfinite(p.delay_s)) {
        throw NumericalError("non-finite path parameter for user " + std::to_string(k));
      }
      los += p.is_los ? 1 : 0;
    }
    if (los != 1) {
      throw ConfigError("user " + std::to_string(k) + " must have exactly one LoS path");
    }
  }
}

ChannelSet generate_channel_with_ratios(const SystemConfig& cfg, const PathParams& paths,
                                        std::span<const double> steering_ratios) {
  validate(cfg);
  validate_paths(cfg, paths);
  if (static_cast<int>(steering_ratios.size()) != cfg.num_subcarriers) {
    throw DimensionError("steering ratio list length differs from M");
  }

  ChannelSet out;
  out.freqs = subcarrier_frequencies(cfg);
  out.eta = frequency_ratios(cfg);
  const auto profile = gain_profile(cfg);
  const double kappa = spacing_factor(cfg);
  const double zeta = std::sqrt(static_cast<double>(cfg.num_rx) * cfg.num_tx / cfg.num_paths);

  out.H.resize(static_cast<std::size_t>(cfg.num_users));
  for (int k = 0; k < cfg.num_users; ++k) {
    auto& per_user = out.H[static_cast<std::size_t>(k)];
    per_user.reserve(static_cast<std::size_t>(cfg.num_subcarriers));
    for (int m = 0; m < cfg.num_subcarriers; ++m) {
      const auto mi = static_cast<std::size_t>(m);
      const double ratio = steering_ratios[mi];
      CMatrix h = CMatrix::Zero(cfg.num_rx, cfg.num_tx);
      for (const auto& p : paths.paths[static_cast<std::size_t>(k)]) {
        const Complex coeff = zeta * p.gain * profile[mi] *
                              std::polar(1.0, -2.0 * pi * p.delay_s * out.freqs[mi]);
        h.noalias() += coeff * steering_vector(cfg.num_rx, kappa * ratio * p.doa) *
                       steering_vector(cfg.num_tx, kappa * ratio * p.dod).adjoint();
      }
      per_user.push_back(std::move(h));
    }
  }
  return out;
}

ChannelSet generate_channel(const SystemConfig& cfg, const PathParams& paths, bool split_free) {
  std::vector<double> ratios = frequency_ratios(cfg);
  if (split_free) ratios.assign(ratios.size(), 1.0);
  ChannelSet out = generate_channel_with_ratios(cfg, paths, ratios);
  out.split_free = split_free;
  return out;
}

double dirichlet_sinc(double a, int n) {
  if (n < 1) throw DimensionError("dirichlet_sinc: N must be at least 1");
  // Reduce around the nearest integer so the removable singularity is exact.
  const double nearest = std::round(a);
  const double delta = a - nearest;
  const bool odd_shift = std::fmod(std::abs(nearest) * (n - 1), 2.0) == 1.0;
  const double sign = odd_shift ? -1.0 : 1.0;
  const double den = n * std::sin(pi * delta);
  if (std::abs(delta) < 1e-13) return sign;
  return sign * std::sin(n * pi * delta) / den;
}

double array_gain(const CVector& u, double phi_bar, int m, const SystemConfig& cfg) {
  const double norm2 = u.squaredNorm();
  if (!(norm2 > 0.0)) throw NumericalError("array_gain: zero beamformer");
  if (m < 0 || m >= cfg.num_subcarriers) throw DimensionError("array_gain: subcarrier out of range");
  const auto eta = frequency_ratios(cfg);
  const CVector image = dilate_phases(u, eta[static_cast<std::size_t>(m)]);
  const CVector probe = steering_vector(static_cast<int>(u.size()), spacing_factor(cfg) * phi_bar);
  return std::norm(image.dot(probe)) / norm2;
}

double array_gain_analytic(double phi, double phi_bar, int m, const SystemConfig& cfg) {
  const auto freqs = subcarrier_frequencies(cfg);
  const double spacing = resolve(cfg).element_spacing_m;
  const double mu = spacing *
                    (freqs[static_cast<std::size_t>(m)] * phi - cfg.carrier_hz * phi_bar) /
                    kSpeedOfLight;
  const double s = dirichlet_sinc(mu, cfg.num_tx);
  return s * s;
}

std::vector<GainSample> array_gain_curve(const SystemConfig& cfg, double phi, int m, int points) {
  if (points < 2) throw ConfigError("array_gain_curve: need at least 2 grid points");
  const CVector u = steering_vector(cfg.num_tx, spacing_factor(cfg) * phi);
  std::vector<GainSample> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    const double phi_bar = -1.0 + 2.0 * i / (points - 1);
    out.push_back({phi_bar, array_gain(u, phi_bar, m, cfg)});
  }
  return out;
}

}  // namespace bsabf
