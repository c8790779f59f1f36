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

#include <Eigen/Dense>

namespace bsabf {

/// Unwrapped phases (radians) of a constant-modulus vector.
struct PhaseVector {
  Eigen::VectorXd psi;
};

/// Sequential nearest-phase unwrapping anchored at entry 0 (arg in (-pi, pi]).
/// Exact for linear phase; an exact pi step resolves to -pi. Throws
/// NumericalError when entry moduli differ by more than 1e-6 relative.
PhaseVector unwrap_phases(const Eigen::VectorXcd& a);

/// Entries exp(j psi_n) / sqrt(N).
Eigen::VectorXcd from_phases(const PhaseVector& phases);

/// Multiplies the unwrapped phases of `f` by `ratio` and rebuilds at modulus
/// 1/sqrt(N). Steering vectors map exactly: a(psi) -> a(ratio * psi).
Eigen::VectorXcd scale_beamformer(const Eigen::VectorXcd& f, double ratio);

/// Column-wise scale_beamformer.
Eigen::MatrixXcd scale_analog_matrix(const Eigen::MatrixXcd& analog, double ratio);

/// Like scale_beamformer but for arbitrary vectors: moduli kept, phases of
/// nonzero entries unwrapped and scaled. Zero entries stay zero.
Eigen::VectorXcd dilate_phases(const Eigen::VectorXcd& u, double ratio);

}  // namespace bsabf
