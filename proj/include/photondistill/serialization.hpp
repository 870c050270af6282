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

#ifndef PHOTONDISTILL_SERIALIZATION_HPP
#define PHOTONDISTILL_SERIALIZATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "photondistill/bounds.hpp"
#include "photondistill/conditional.hpp"
#include "photondistill/ensemble.hpp"
#include "photondistill/search.hpp"
#include "photondistill/unitary.hpp"

namespace photondistill {

using json = nlohmann::ordered_json;

// Matrix exchange format: {"dim": N, "re": [[...]], "im": [[...]]},
// row-major, row index = output mode.
json to_json(const Unitary& u);
Unitary unitary_from_json(const json& j);

// Generator form: {"kind": "explicit" | "epsilon_scheme" | "dft" | "haar"
// | "givens", ...kind-specific fields...}. "explicit" takes the exchange
// format fields inline.
Unitary unitary_from_spec(const json& j);

json to_json(const ConditionalDistribution& dist);
json to_json(const ImprovementVerdict& verdict);
json to_json(const BoundReport& report);
json to_json(const SearchResult& result);
json to_json(const GivensParameterization& params);

/// A fully specified evaluation scenario.
struct Scenario {
    InputEnsemble ensemble = InputEnsemble::from_probs({0.5});
    Unitary unitary = dft(2);
    DetectionPattern pattern = DetectionPattern::from_counts({});
};

// {"probs": [...], "unitary": {generator form}, "pattern": [n2..nN]}
Scenario scenario_from_json(const json& j);

SearchProblem search_problem_from_json(const json& j);

/// printf %.17g, the CSV cell format.
std::string format_double(double v);

/// FNV-1a 64-bit digest of raw bytes, as 16 lowercase hex digits. Used to
/// stamp outputs with the exact configuration that produced them.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace photondistill

#endif
