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

#ifndef QSCISSORS_LINEAR_OPTICS_HPP
#define QSCISSORS_LINEAR_OPTICS_HPP

#include <span>
#include <vector>

#include "qscissors/fock_space.hpp"

namespace qscissors {

struct ScatterTerm {
  std::vector<int> occupation;
  Complex amplitude;
};

/// Fock-basis action of a passive linear network. Column j of `transfer`
/// gives the image of input mode j's creation operator,
///   a_j^dagger -> sum_i transfer(i, j) a_i^dagger,
/// so the output for input |n_0, n_1, ...> is
///   prod_j (sum_i transfer(i, j) a_i^dagger)^{n_j} / sqrt(n_j!) |0>.
/// Terms with exactly zero amplitude are omitted. Output occupations index
/// the rows of `transfer`.
std::vector<ScatterTerm> scatter(const CMatrix& transfer, std::span<const int> input);

/// sqrt(n!) for 0 <= n <= 170.
double sqrt_factorial(int n);

}  // namespace qscissors

#endif  // QSCISSORS_LINEAR_OPTICS_HPP
