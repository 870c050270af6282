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

#ifndef PHOTONDISTILL_ERRORS_HPP
#define PHOTONDISTILL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace photondistill {

/// Malformed input: wrong sizes, out-of-range probabilities, bad JSON fields.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operands whose dimensions cannot be combined (matrix vs. vector lengths).
struct DimensionError : ValidationError {
    using ValidationError::ValidationError;
};

/// Matrix failed the unitarity check. Carries the largest entry of |U†U − I|.
struct NonUnitaryError : std::runtime_error {
    double max_deviation;
    explicit NonUnitaryError(double deviation)
        : std::runtime_error("matrix is not unitary (max |U^H U - I| = " +
                             std::to_string(deviation) + ")"),
          max_deviation(deviation) {}
};

/// Problem size beyond the hard caps of an exact (exponential-cost) kernel.
struct SizeExceededError : std::length_error {
    using std::length_error::length_error;
};

/// Photon-number bookkeeping mismatch between input and output states.
struct ConservationViolationError : ValidationError {
    using ValidationError::ValidationError;
};

/// Odds ratio R = p/(1-p) requested for p = 1.
struct PMaxOneError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Internal inconsistency: results that are mathematically impossible
/// (large negative probabilities, proven bounds violated, ...). These
/// indicate a defect in the engine, never in user input.
struct NumericIntegrityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace photondistill

#endif
