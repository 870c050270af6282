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

#include "photondistill/ensemble.hpp"

#include <algorithm>

namespace photondistill {

InputEnsemble InputEnsemble::from_probs(std::vector<double> probs) {
    if (probs.empty()) throw ValidationError("ensemble: at least one mode required");
    for (const double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ValidationError("ensemble: probabilities must lie in [0, 1]");
        }
    }
    return InputEnsemble(std::move(probs));
}

double InputEnsemble::p_max() const {
    return *std::max_element(probs_.begin(), probs_.end());
}

int InputEnsemble::active_modes() const {
    return static_cast<int>(std::count_if(probs_.begin(), probs_.end(),
                                          [](double p) { return p > 0.0; }));
}

std::optional<double> InputEnsemble::odds_ratio() const {
    const double p = p_max();
    if (p >= 1.0) return std::nullopt;
    return p / (1.0 - p);
}

bool InputEnsemble::all_equal(double tol) const {
    const auto [lo, hi] = std::minmax_element(probs_.begin(), probs_.end());
    return (*hi - *lo) <= tol;
}

OccupationVector OccupationVector::from_bits(const std::vector<int>& bits) {
    if (bits.empty()) throw ValidationError("occupation: at least one mode required");
    std::vector<std::uint8_t> packed;
    packed.reserve(bits.size());
    for (const int b : bits) {
        if (b != 0 && b != 1) throw ValidationError("occupation: entries must be 0 or 1");
        packed.push_back(static_cast<std::uint8_t>(b));
    }
    return OccupationVector(std::move(packed));
}

int OccupationVector::weight() const {
    int w = 0;
    for (const auto b : bits_) w += b;
    return w;
}

std::vector<int> OccupationVector::support() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
        if (bits_[static_cast<std::size_t>(i)]) out.push_back(i);
    }
    return out;
}

DetectionPattern DetectionPattern::from_counts(std::vector<int> counts) {
    for (const int c : counts) {
        if (c < 0) throw ValidationError("pattern: counts must be >= 0");
    }
    return DetectionPattern(std::move(counts));
}

int DetectionPattern::total() const {
    int t = 0;
    for (const int c : counts_) t += c;
    return t;
}

}  // namespace photondistill
