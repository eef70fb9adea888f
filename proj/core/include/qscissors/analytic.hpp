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

// Closed-form oracles for the double quantum-scissors teleporter. The
// normalization and fidelity expressions are evaluated exactly as published,
// including where they leave the physical range; such values carry the
// out_of_range flag instead of being clamped.

#ifndef QSCISSORS_ANALYTIC_HPP
#define QSCISSORS_ANALYTIC_HPP

#include <string_view>

#include "qscissors/channels.hpp"
#include "qscissors/fock_space.hpp"

namespace qscissors {

struct NoiseParams {
  double eta = 1.0;
  double damping = 0.0;
  /// R = (|gamma_0| / |gamma_1|)^2
  double ratio = 1.0;
  /// |gamma|, the amplitude that appears in the exponential prefactors.
  double gamma_amp = 1.0;
  /// |C|^2 = |gamma_0|^2 + |gamma_1|^2
  double norm_c2 = 0.0;

  /// Parameters of a coherent drive; R and |C|^2 are derived from gamma.
  static NoiseParams from_drive(double eta, double damping, Complex gamma);
  /// Throws PhysicalityError unless eta in [0,1], damping in [0,1), R > 0.
  void validate() const;
};

enum class FormulaId { kTruncationNorm, kTruncationFidelity, kTeleportNorm, kTeleportFidelity };

/// Report identifiers: N_eq15, F_eq16, N_eq180, F_eq20.
std::string_view formula_name(FormulaId id);

struct OracleReport {
  double value = 0.0;
  FormulaId formula = FormulaId::kTruncationFidelity;
  NoiseParams inputs;
  /// Value outside [0, 1] for a fidelity; non-positive for a normalization.
  bool out_of_range = false;
};

/// eta Gamma + (1 - eta)
double combined_damping(double eta, double damping);

/// <L^n L^dagger^m> in the vacuum for [L, L^dagger] = d: delta_nm n! d^n.
double wick_moment(int n, int m, double d);

/// Normalization of the engineered state. |t| and |r| come from `bs`.
OracleReport truncation_norm(const NoiseParams& params, const BeamSplitterSpec& bs);
OracleReport truncation_fidelity(const NoiseParams& params);
OracleReport teleport_norm(const NoiseParams& params);
OracleReport teleport_fidelity(const NoiseParams& params);

}  // namespace qscissors

#endif  // QSCISSORS_ANALYTIC_HPP
