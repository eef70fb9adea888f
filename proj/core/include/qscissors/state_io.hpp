// Copyright 2026 The qscissors Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// JSON snapshots of states.
//
// Layout:
//   {
//     "kind": "fock_vector" | "density_operator",
//     "register": {"labels": [...], "cutoffs": [...]},
//     "basis_order": "lexicographic occupation tuples, first mode most significant",
//     "amplitudes": [[re, im], ...]          // fock_vector
//     "matrix": [[re, im], ...]              // density_operator, row-major
//   }

#ifndef QSCISSORS_STATE_IO_HPP
#define QSCISSORS_STATE_IO_HPP

#include <string>
#include <string_view>

#include "qscissors/fock_space.hpp"

namespace qscissors {

inline constexpr std::string_view kBasisOrderNote =
    "lexicographic occupation tuples, first mode most significant";

std::string to_json(const FockVector& psi);
std::string to_json(const DensityOperator& rho);

FockVector fock_vector_from_json(std::string_view text);
DensityOperator density_operator_from_json(std::string_view text);

}  // namespace qscissors

#endif  // QSCISSORS_STATE_IO_HPP
