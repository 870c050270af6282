/**
 * Copyright 2026 The photon-distill Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PHOTONDISTILL_UNITARY_HPP
#define PHOTONDISTILL_UNITARY_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "photondistill/errors.hpp"

namespace photondistill {

/// Largest tolerated entry of |U†U - I| before a matrix is rejected.
inline constexpr double kUnitarityTol = 1e-10;

/**
 * @brief An N-mode passive linear network. Row index = output mode,
 * column index = input mode: a_i† on the input side maps to
 * sum_k entries(k, i) a_k† on the output side.
 *
 * Instances always satisfy the unitarity invariant; every factory
 * revalidates, so a Unitary can be consumed without further checks.
 */
class Unitary {
  public:
    /// Validates squareness and unitarity (throws NonUnitaryError with the
    /// measured deviation otherwise).
    static Unitary from_entries(const Eigen::MatrixXcd& entries);

    /// Largest entry of |U†U - I|; usable on arbitrary square matrices.
    static double deviation_from_unitary(const Eigen::MatrixXcd& entries);

    const Eigen::MatrixXcd& matrix() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }
    std::complex<double> operator()(int row, int col) const { return entries_(row, col); }

  private:
    explicit Unitary(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {}
    Eigen::MatrixXcd entries_;
};

/**
 * @brief Parameters of the near-identity distillation family.
 *
 * Output mode 1 keeps amplitude sqrt((1-eps^2)/(N-1)) from every input
 * except input 2, where it takes -eps; output mode 2 (the detector feed)
 * takes eps/sqrt(N-1) from every input except input 2, where it takes
 * sqrt(1-eps^2). Rows 3..N are any orthonormal completion; this
 * implementation uses modified Gram-Schmidt over standard basis seeds, so
 * the completion (and thus the whole matrix) is deterministic.
 */
struct EpsilonSchemeSpec {
    int n_modes = 0;      // N >= 2
    double epsilon = 0;   // 0 < eps < 1
};

/// Builds the scheme above. Throws ValidationError for out-of-range
/// parameters; the result is exactly unitary to kUnitarityTol.
Unitary epsilon_scheme(const EpsilonSchemeSpec& spec);

/// Discrete Fourier transform network, entries exp(2*pi*i*j*k/N)/sqrt(N)
/// with 0-based j, k.
Unitary dft(int dim);

/// Haar-distributed random unitary: complex Ginibre QR with the phase
/// correction diag(R_kk/|R_kk|). Deterministic for a fixed seed.
Unitary haar_random(int dim, std::uint64_t seed);

/**
 * @brief Box-coordinate parameterization: a product of two-mode rotations
 * over mode pairs (i,j) in lexicographic order, times a terminal diagonal
 * of phases.
 *
 * Rotation k acts on pair (i,j) as
 *   rows/cols (i,j):  [ cos t   -sin t e^{i f} ]
 *                     [ sin t e^{-i f}   cos t ]
 * with t = angles[k] in [0, pi/2] and f = phases[k] in [0, 2*pi).
 * phases[K..K+N-1] (K = N(N-1)/2) are the diagonal phases.
 */
struct GivensParameterization {
    int dim = 0;
    std::vector<double> angles;   // size N(N-1)/2
    std::vector<double> phases;   // size N(N-1)/2 + N
};

/// Multiplies out the rotations. Validates vector sizes and the angle box.
Unitary realize(const GivensParameterization& params);

/// Inverse of realize, via plane-rotation elimination of the strict lower
/// triangle. realize(extract_parameters(u)) reproduces u to ~1e-12.
GivensParameterization extract_parameters(const Unitary& u);

}  // namespace photondistill

#endif
