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

#ifndef PHOTONDISTILL_PERMANENT_HPP
#define PHOTONDISTILL_PERMANENT_HPP

#include <Eigen/Dense>
#include <complex>
#include <span>

#include "photondistill/ensemble.hpp"
#include "photondistill/errors.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

/// Hard cap for the Ryser kernel (2^m subset sweep).
inline constexpr int kMaxPermanentDim = 20;

/// Hard cap for the m! reference kernel.
inline constexpr int kMaxNaivePermanentDim = 9;

/// Permanent of a square complex matrix by Ryser's formula with Gray-code
/// subset updates, O(2^m * m). per(0x0) = 1. Throws SizeExceededError
/// beyond kMaxPermanentDim and DimensionError for non-square input.
std::complex<double> permanent(const Eigen::MatrixXcd& m);

/// Permanent as a literal sum over all m! permutations. Reference
/// implementation kept deliberately independent of the Ryser kernel.
std::complex<double> naive_permanent(const Eigen::MatrixXcd& m);

/**
 * @brief Transition amplitude data for one (input occupation, output
 * occupation) pair: value = per(A) where A picks the rows of the network
 * matrix indexed by the output occupation (row k repeated n_k times,
 * ascending k, copies adjacent) and the columns indexed by the occupied
 * inputs (ascending). The Fock amplitude is value / sqrt(prod_k n_k!).
 */
struct AmplitudeSum {
    std::complex<double> value;
};

/// Builds the row/column selection described above and evaluates its
/// permanent. `output_counts` has one count per output mode (length N);
/// total output photons must equal s.weight() (ConservationViolationError).
AmplitudeSum compute_amplitude_sum(const Unitary& u, const OccupationVector& s,
                                   std::span<const int> output_counts);

namespace detail {
/// Raw Ryser kernel over a row-major m*m buffer; no validation, no copies.
std::complex<double> ryser(const std::complex<double>* a, int m);
}  // namespace detail

}  // namespace photondistill

#endif
