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

#include <complex>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "bsabf/config.hpp"

namespace bsabf {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// One propagation path. Directions are sine-space values in [-1, 1].
struct PathDescriptor {
  Complex gain{1.0, 0.0};  // frequency-flat part; scaled per subcarrier by the path-loss profile
  double doa = 0.0;        // at the user array
  double dod = 0.0;        // at the base-station array
  double delay_s = 0.0;
  bool is_los = false;
};

/// paths[k][l] for user k, path l.
struct PathParams {
  std::vector<std::vector<PathDescriptor>> paths;

  int num_users() const { return static_cast<int>(paths.size()); }
  int num_paths() const { return paths.empty() ? 0 : static_cast<int>(paths.front().size()); }
};

/// Per-user, per-subcarrier N_R x N_T channel matrices.
struct ChannelSet {
  std::vector<std::vector<CMatrix>> H;  // H[k][m]
  std::vector<double> freqs;
  std::vector<double> eta;  // freqs[m] / f_c
  bool split_free = false;

  int num_users() const { return static_cast<int>(H.size()); }
  int num_subcarriers() const { return static_cast<int>(freqs.size()); }
  const CMatrix& at(int k, int m) const { return H[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)]; }
};

// Subcarrier grid ------------------------------------------------------------

/// f_m = f_c + (B/M)(m - (M-1)/2) for 0-based m; symmetric about f_c.
std::vector<double> subcarrier_frequencies(const SystemConfig& cfg);
std::vector<double> frequency_ratios(const SystemConfig& cfg);

/// 0-based index of the subcarrier closest to f_c from below; exact (eta = 1)
/// for odd M.
int central_subcarrier(int num_subcarriers);

// Beam split -----------------------------------------------------------------

/// Sine-space direction seen at frequency ratio eta. Not clamped to [-1, 1].
double spatial_direction(double phi, double eta);
double beam_split_deviation(double phi, double eta);

/// ULA response with entries exp(-j*pi*n*psi)/sqrt(N), n = 0..N-1.
CVector steering_vector(int n, double psi);

// Path loss ------------------------------------------------------------------

/// RMS path amplitude sqrt(E|alpha|^2) = c0/(4 pi f d) * exp(-k_abs d / 2).
double path_gain(double frequency_hz, double distance_m, double absorption_per_m);

/// Per-subcarrier amplitude factor applied to PathDescriptor::gain: the RMS
/// path amplitude at f_m relative to its value at f_c.
std::vector<double> gain_profile(const SystemConfig& cfg);

/// Draws one set of paths: angles uniform in [-pi/2, pi/2] mapped through
/// sine, CN(0,1) gains scaled to the RMS amplitude at f_c (unity when
/// normalize_path_gain), path 0 is LoS and the rest carry the NLoS penalty.
PathParams draw_paths(const SystemConfig& cfg, std::mt19937_64& rng);

void validate_paths(const SystemConfig& cfg, const PathParams& paths);

// Channel synthesis ----------------------------------------------------------

/// H_k[m] = zeta * sum_l alpha_{k,m,l} a_R(eta_m doa) a_T(eta_m dod)^H exp(-j 2 pi tau f_m),
/// zeta = sqrt(N_R N_T / L). With `split_free` the steering arguments are the
/// physical directions.
ChannelSet generate_channel(const SystemConfig& cfg, const PathParams& paths, bool split_free = false);

/// Same synthesis with caller-supplied frequency ratios in the steering
/// arguments (delays and gains still follow the configured grid).
ChannelSet generate_channel_with_ratios(const SystemConfig& cfg, const PathParams& paths,
                                        std::span<const double> steering_ratios);

// Array gain -----------------------------------------------------------------

/// Sigma(a) = sin(N pi a) / (N sin(pi a)), with the analytic limit at integer a.
double dirichlet_sinc(double a, int n);

/// Normalized gain |u_m^H v(phi_bar)|^2 / (|u|^2 |v|^2) of beamformer `u` at
/// subcarrier `m` (0-based), where u_m is u with its unwrapped phases dilated
/// by eta_m and v is the unit-norm probe toward phi_bar. For u = a(phi) this
/// is |Sigma(mu_m)|^2, mu_m = d (f_m phi - f_c phi_bar) / c0, peaking at
/// phi_bar = eta_m phi. Matched pairs give 1.
double array_gain(const CVector& u, double phi_bar, int m, const SystemConfig& cfg);

/// Analytic counterpart for u = steering toward physical direction phi.
double array_gain_analytic(double phi, double phi_bar, int m, const SystemConfig& cfg);

struct GainSample {
  double phi_bar;
  double gain;
};

/// Gain of the beamformer steered to physical `phi`, on a uniform phi_bar grid
/// over [-1, 1] with `points` samples.
std::vector<GainSample> array_gain_curve(const SystemConfig& cfg, double phi, int m, int points);

}  // namespace bsabf
