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

#ifndef PHOTONDISTILL_ENSEMBLE_HPP
#define PHOTONDISTILL_ENSEMBLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "photondistill/errors.hpp"

namespace photondistill {

/**
 * @brief Product input state: mode i holds one photon with probability
 * probs[i] and vacuum otherwise, independently across modes.
 *
 * Immutable after construction; all derived quantities are recomputed on
 * demand (they are O(N) and never hot).
 */
class InputEnsemble {
  public:
    /// Validates 0 <= p <= 1 for every entry and a nonzero mode count.
    static InputEnsemble from_probs(std::vector<double> probs);

    const std::vector<double>& probs() const { return probs_; }
    int size() const { return static_cast<int>(probs_.size()); }

    /// Largest single-photon probability across modes.
    double p_max() const;

    /// Number of modes that can emit a photon at all (p_i > 0).
    int active_modes() const;

    /// Odds ratio p_max/(1 - p_max); empty when p_max == 1.
    std::optional<double> odds_ratio() const;

    /// True when every p_i agrees with every other within `tol`.
    bool all_equal(double tol) const;

  private:
    explicit InputEnsemble(std::vector<double> probs) : probs_(std::move(probs)) {}
    std::vector<double> probs_;
};

/**
 * @brief Occupation of the input modes by zero or one photon each.
 */
class OccupationVector {
  public:
    /// Validates that every entry is 0 or 1.
    static OccupationVector from_bits(const std::vector<int>& bits);

    const std::vector<std::uint8_t>& bits() const { return bits_; }
    int size() const { return static_cast<int>(bits_.size()); }

    /// Total photon number carried by the vector.
    int weight() const;

    /// Ascending list of occupied mode indices (0-based).
    std::vector<int> support() const;

  private:
    explicit OccupationVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}
    std::vector<std::uint8_t> bits_;
};

/**
 * @brief Detected photon counts on output modes 2..N (0-based: 1..N-1).
 * Mode 1 (index 0) is the undetected output the distribution is computed on.
 */
class DetectionPattern {
  public:
    /// Validates counts >= 0. The vector length is N-1 for an N-mode network.
    static DetectionPattern from_counts(std::vector<int> counts);

    const std::vector<int>& counts() const { return counts_; }
    int size() const { return static_cast<int>(counts_.size()); }

    /// Total number of detected photons D.
    int total() const;

  private:
    explicit DetectionPattern(std::vector<int> counts) : counts_(std::move(counts)) {}
    std::vector<int> counts_;
};

}  // namespace photondistill

#endif
