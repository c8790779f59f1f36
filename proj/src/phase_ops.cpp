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


#include "bsabf/phase_ops.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "bsabf/error.hpp"

namespace bsabf {

namespace {

constexpr double kModulusTolerance = 1e-6;
constexpr double kTieTolerance = 1e-12;

// Unwraps a vector whose entries are already known to share a modulus.
Eigen::VectorXd unwrap_unchecked(const Eigen::VectorXcd& a) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const auto n = a.size();
  Eigen::VectorXd psi(n);
  if (n == 0) return psi;
  psi(0) = std::arg(a(0));
  if (psi(0) <= -std::numbers::pi) psi(0) += kTwoPi;
  for (Eigen::Index i = 1; i < n; ++i) {
    double step = std::arg(a(i) * std::conj(a(i - 1)));
    // a half-turn step is ambiguous; resolve it toward -pi
    if (std::abs(step) >= std::numbers::pi - kTieTolerance) step = -std::numbers::pi;
    const double target = psi(i - 1) + step;
    const double raw = std::arg(a(i));
    psi(i) = raw + kTwoPi * std::round((target - raw) / kTwoPi);
  }
  return psi;
}

}  // namespace

PhaseVector unwrap_phases(const Eigen::VectorXcd& a) {
  if (a.size() == 0) return {Eigen::VectorXd()};
  const double ref = std::abs(a(0));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a(i).real()) || !std::isfinite(a(i).imag())) {
      throw NumericalError("unwrap_phases: non-finite entry");
    }
    worst = std::max(worst, std::abs(std::abs(a(i)) - ref));
  }
  if (!(ref > 0.0) || worst > kModulusTolerance * ref) {
    std::ostringstream msg;
    msg << "unwrap_phases: input is not constant-modulus (max modulus deviation " << worst
        << ", reference " << ref << ")";
    throw NumericalError(msg.str());
  }
  return {unwrap_unchecked(a)};
}

Eigen::VectorXcd from_phases(const PhaseVector& phases) {
  const auto n = phases.psi.size();
  Eigen::VectorXcd out(n);
  if (n == 0) return out;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i) out(i) = std::polar(scale, phases.psi(i));
  return out;
}

Eigen::VectorXcd scale_beamformer(const Eigen::VectorXcd& f, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw NumericalError("scale_beamformer: ratio must be positive and finite");
  }
  PhaseVector phases = unwrap_phases(f);
  phases.psi *= ratio;
  return from_phases(phases);
}

Eigen::MatrixXcd scale_analog_matrix(const Eigen::MatrixXcd& analog, double ratio) {
  Eigen::MatrixXcd out(analog.rows(), analog.cols());
  for (Eigen::Index j = 0; j < analog.cols(); ++j) {
    out.col(j) = scale_beamformer(analog.col(j), ratio);
  }
  return out;
}

Eigen::VectorXcd dilate_phases(const Eigen::VectorXcd& u, double ratio) {
  const auto n = u.size();
  Eigen::VectorXcd unit(n);
  std::complex<double> last{1.0, 0.0};
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mag = std::abs(u(i));
    if (mag > 0.0) last = u(i) / mag;
    unit(i) = last;
  }
  const Eigen::VectorXd psi = unwrap_unchecked(unit) * ratio;
  Eigen::VectorXcd out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = std::polar(std::abs(u(i)), psi(i));
  return out;
}

}  // namespace bsabf
