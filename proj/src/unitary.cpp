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

#include "photondistill/unitary.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace photondistill {

using std::complex;

double Unitary::deviation_from_unitary(const Eigen::MatrixXcd& entries) {
    const Eigen::MatrixXcd gram = entries.adjoint() * entries;
    const auto n = entries.cols();
    return (gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Unitary Unitary::from_entries(const Eigen::MatrixXcd& entries) {
    if (entries.rows() != entries.cols() || entries.rows() < 2) {
        throw DimensionError("unitary must be square with dim >= 2");
    }
    const double dev = deviation_from_unitary(entries);
    if (!(dev <= kUnitarityTol)) {  // negated so NaN also rejects
        throw NonUnitaryError(dev);
    }
    return Unitary(entries);
}

Unitary dft(int dim) {
    if (dim < 2) throw DimensionError("dft: dim must be >= 2");
    Eigen::MatrixXcd m(dim, dim);
    const double w = 2.0 * std::numbers::pi / static_cast<double>(dim);
    for (int j = 0; j < dim; ++j) {
        for (int k = 0; k < dim; ++k) {
            m(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                 w * static_cast<double>(j) * static_cast<double>(k));
        }
    }
    return Unitary::from_entries(m);
}

Unitary haar_random(int dim, std::uint64_t seed) {
    if (dim < 2) throw DimensionError("haar_random: dim must be >= 2");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXcd ginibre(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            ginibre(r, c) = complex<double>(re, im) / std::sqrt(2.0);
        }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge: without the phase correction Q is not Haar.
    for (int c = 0; c < dim; ++c) {
        const complex<double> d = r(c, c);
        const double mag = std::abs(d);
        q.col(c) *= (mag > 0 ? d / mag : complex<double>(1.0, 0.0));
    }
    return Unitary::from_entries(q);
}

Unitary epsilon_scheme(const EpsilonSchemeSpec& spec) {
    const int n = spec.n_modes;
    const double eps = spec.epsilon;
    if (n < 2) throw ValidationError("epsilon_scheme: n_modes must be >= 2");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ValidationError("epsilon_scheme: epsilon must lie in (0, 1)");
    }
    const double croot = std::sqrt((1.0 - eps * eps) / static_cast<double>(n - 1));
    const double srow = eps / std::sqrt(static_cast<double>(n - 1));

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int c = 0; c < n; ++c) {
        m(0, c) = (c == 1) ? -eps : croot;
        m(1, c) = (c == 1) ? std::sqrt(1.0 - eps * eps) : srow;
    }

    // Orthonormal completion of rows 2..n-1: modified Gram-Schmidt over
    // standard basis seeds, skipping seeds that collapse onto the span.
    int filled = 2;
    for (int attempt = 0; attempt < n && filled < n; ++attempt) {
        // Seeds e3..eN first; e1, e2 only as fallback.
        const int seed_index = (attempt < n - 2) ? attempt + 2 : attempt - (n - 2);
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
        v(seed_index) = 1.0;
        for (int r = 0; r < filled; ++r) {
            v -= m.row(r).conjugate().transpose() * (m.row(r) * v)(0);
        }
        const double norm = v.norm();
        if (norm < 1e-6) continue;   // seed was (numerically) in the span
        m.row(filled) = (v / norm).transpose();
        ++filled;
    }
    if (filled != n) {
        throw NumericIntegrityError("epsilon_scheme: completion did not span");
    }
    return Unitary::from_entries(m);
}

namespace {

// Applies the pair rotation for (i, j) on the left of dst:
// dst(rows i,j) <- [static block] * dst(rows i,j).
void apply_rotation(Eigen::MatrixXcd& dst, int i, int j, double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const complex<double> top = -s * std::polar(1.0, phi);
    const complex<double> bottom = s * std::polar(1.0, -phi);
    const Eigen::RowVectorXcd row_i = dst.row(i);
    const Eigen::RowVectorXcd row_j = dst.row(j);
    dst.row(i) = c * row_i + top * row_j;
    dst.row(j) = bottom * row_i + c * row_j;
}

}  // namespace

Unitary realize(const GivensParameterization& params) {
    const int n = params.dim;
    if (n < 2) throw DimensionError("realize: dim must be >= 2");
    const std::size_t k = static_cast<std::size_t>(n) * (n - 1) / 2;
    if (params.angles.size() != k) {
        throw DimensionError("realize: expected N(N-1)/2 angles");
    }
    if (params.phases.size() != k + static_cast<std::size_t>(n)) {
        throw DimensionError("realize: expected N(N-1)/2 + N phases");
    }
    constexpr double kAngleSlack = 1e-12;
    for (const double a : params.angles) {
        if (!(a >= -kAngleSlack && a <= std::numbers::pi / 2 + kAngleSlack)) {
            throw ValidationError("realize: angle outside [0, pi/2]");
        }
    }

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int c = 0; c < n; ++c) {
        m(c, c) = std::polar(1.0, params.phases[k + static_cast<std::size_t>(c)]);
    }
    // Pairs in lexicographic order; the first listed rotation is the
    // leftmost factor, so apply right-to-left.
    std::size_t idx = k;
    for (int i = n - 2; i >= 0; --i) {
        for (int j = n - 1; j > i; --j) {
            --idx;
            apply_rotation(m, i, j, params.angles[idx], params.phases[idx]);
        }
    }
    return Unitary::from_entries(m);
}

GivensParameterization extract_parameters(const Unitary& u) {
    const int n = u.dim();
    GivensParameterization params;
    params.dim = n;
    const std::size_t k = static_cast<std::size_t>(n) * (n - 1) / 2;
    params.angles.resize(k);
    params.phases.resize(k + static_cast<std::size_t>(n));

    Eigen::MatrixXcd work = u.matrix();
    const double two_pi = 2.0 * std::numbers::pi;
    std::size_t idx = 0;
    for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const complex<double> uii = work(i, i);
            const complex<double> uji = work(j, i);
            double theta = std::atan2(std::abs(uji), std::abs(uii));
            double phi = 0.0;
            if (std::abs(uji) > 0.0) {
                phi = std::arg(uii) - std::arg(uji);
                if (phi < 0.0) phi += two_pi;
                if (phi >= two_pi) phi -= two_pi;
            }
            // Left-multiply by the inverse rotation to kill work(j, i).
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            const complex<double> ephi = std::polar(1.0, phi);
            const Eigen::RowVectorXcd row_i = work.row(i);
            const Eigen::RowVectorXcd row_j = work.row(j);
            work.row(i) = c * row_i + s * ephi * row_j;
            work.row(j) = -s * std::conj(ephi) * row_i + c * row_j;
            params.angles[idx] = theta;
            params.phases[idx] = phi;
            ++idx;
        }
    }
    for (int c = 0; c < n; ++c) {
        double alpha = std::arg(work(c, c));
        if (alpha < 0.0) alpha += two_pi;
        if (alpha >= two_pi) alpha -= two_pi;
        params.phases[k + static_cast<std::size_t>(c)] = alpha;
    }
    return params;
}

}  // namespace photondistill
