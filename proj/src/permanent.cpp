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

#include "photondistill/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

namespace photondistill {

using std::complex;

namespace detail {

complex<double> ryser(const complex<double>* a, int m) {
    if (m == 0) return {1.0, 0.0};
    // Ryser with Gray-code subset order: per(A) = (-1)^m * sum over
    // nonempty column subsets S of (-1)^{|S|} prod_r (sum_{c in S} a_rc).
    // The Gray code flips one column per step, so the row sums update in
    // O(m) instead of being rebuilt.
    std::vector<complex<double>> row_sums(static_cast<std::size_t>(m), {0.0, 0.0});
    complex<double> total{0.0, 0.0};
    const std::uint64_t n_subsets = std::uint64_t{1} << m;
    std::uint64_t gray_prev = 0;
    for (std::uint64_t k = 1; k < n_subsets; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ gray_prev;
        const int col = std::countr_zero(diff);
        const double sign_col = (gray & diff) ? 1.0 : -1.0;
        for (int r = 0; r < m; ++r) {
            row_sums[static_cast<std::size_t>(r)] +=
                sign_col * a[static_cast<std::size_t>(r) * m + col];
        }
        complex<double> prod{1.0, 0.0};
        for (int r = 0; r < m; ++r) prod *= row_sums[static_cast<std::size_t>(r)];
        const int popcount = std::popcount(gray);
        total += ((m - popcount) % 2 == 0) ? prod : -prod;
        gray_prev = gray;
    }
    return total;
}

}  // namespace detail

complex<double> permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) throw DimensionError("permanent: matrix must be square");
    const int n = static_cast<int>(m.rows());
    if (n > kMaxPermanentDim) {
        throw SizeExceededError("permanent: dimension exceeds hard cap 20");
    }
    if (n == 0) return {1.0, 0.0};
    // Row-major copy so the kernel walks contiguous memory.
    std::vector<complex<double>> buf(static_cast<std::size_t>(n) * n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) buf[static_cast<std::size_t>(r) * n + c] = m(r, c);
    }
    return detail::ryser(buf.data(), n);
}

complex<double> naive_permanent(const Eigen::MatrixXcd& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("naive_permanent: matrix must be square");
    }
    const int n = static_cast<int>(m.rows());
    if (n > kMaxNaivePermanentDim) {
        throw SizeExceededError("naive_permanent: dimension exceeds hard cap 9");
    }
    if (n == 0) return {1.0, 0.0};
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    complex<double> total{0.0, 0.0};
    do {
        complex<double> prod{1.0, 0.0};
        for (int r = 0; r < n; ++r) prod *= m(r, perm[static_cast<std::size_t>(r)]);
        total += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

AmplitudeSum compute_amplitude_sum(const Unitary& u, const OccupationVector& s,
                                   std::span<const int> output_counts) {
    const int n = u.dim();
    if (s.size() != n) {
        throw DimensionError("compute_amplitude_sum: occupation size != network size");
    }
    if (static_cast<int>(output_counts.size()) != n) {
        throw DimensionError("compute_amplitude_sum: output counts size != network size");
    }
    int total_out = 0;
    for (const int c : output_counts) {
        if (c < 0) throw ValidationError("compute_amplitude_sum: negative count");
        total_out += c;
    }
    if (total_out != s.weight()) {
        throw ConservationViolationError(
            "compute_amplitude_sum: photon number differs between input and output");
    }
    if (total_out > kMaxPermanentDim) {
        throw SizeExceededError("compute_amplitude_sum: photon number exceeds cap 20");
    }
    if (total_out == 0) return {complex<double>{1.0, 0.0}};

    const std::vector<int> cols = s.support();
    std::vector<complex<double>> buf(static_cast<std::size_t>(total_out) * total_out);
    int r = 0;
    for (int k = 0; k < n; ++k) {
        for (int copy = 0; copy < output_counts[static_cast<std::size_t>(k)]; ++copy) {
            for (int c = 0; c < total_out; ++c) {
                buf[static_cast<std::size_t>(r) * total_out + c] =
                    u(k, cols[static_cast<std::size_t>(c)]);
            }
            ++r;
        }
    }
    return {detail::ryser(buf.data(), total_out)};
}

}  // namespace photondistill
