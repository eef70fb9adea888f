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

#include "qscissors/analytic.hpp"

#include <cmath>
#include <limits>

#include "qscissors/errors.hpp"

namespace qscissors {

namespace {

OracleReport finish(double value, FormulaId id, const NoiseParams& params, bool is_fidelity) {
  if (!std::isfinite(value)) {
    throw Error(std::string(formula_name(id)) + ": non-finite value for the given parameters");
  }
  OracleReport report;
  report.value = value;
  report.formula = id;
  report.inputs = params;
  report.out_of_range = is_fidelity ? (value < 0.0 || value > 1.0) : !(value > 0.0);
  return report;
}

}  // namespace

NoiseParams NoiseParams::from_drive(double eta, double damping, Complex gamma) {
  CoherentDrive drive;
  drive.gamma = gamma;
  NoiseParams p;
  p.eta = eta;
  p.damping = damping;
  p.ratio = drive.ratio();
  p.gamma_amp = std::abs(gamma);
  p.norm_c2 = drive.norm_c2();
  return p;
}

void NoiseParams::validate() const {
  if (!(eta >= 0.0 && eta <= 1.0)) throw PhysicalityError("eta must lie in [0, 1]");
  if (!(damping >= 0.0 && damping < 1.0)) throw PhysicalityError("Gamma must lie in [0, 1)");
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw PhysicalityError("R must be finite and positive");
  if (!(gamma_amp >= 0.0) || !std::isfinite(gamma_amp)) throw PhysicalityError("|gamma| must be finite");
}

std::string_view formula_name(FormulaId id) {
  switch (id) {
    case FormulaId::kTruncationNorm:
      return "N_eq15";
    case FormulaId::kTruncationFidelity:
      return "F_eq16";
    case FormulaId::kTeleportNorm:
      return "N_eq180";
    case FormulaId::kTeleportFidelity:
      return "F_eq20";
  }
  return "unknown";
}

double combined_damping(double eta, double damping) { return eta * damping + (1.0 - eta); }

double wick_moment(int n, int m, double d) {
  if (n < 0 || m < 0) throw Error("wick_moment: negative power");
  if (n != m) return 0.0;
  double value = 1.0;
  for (int k = 1; k <= n; ++k) value *= k * d;
  return value;
}

OracleReport truncation_norm(const NoiseParams& params, const BeamSplitterSpec& bs) {
  params.validate();
  const double t2 = std::norm(bs.t());
  const double r2 = std::norm(bs.r());
  if (r2 == 0.0) throw Error("N_eq15: reflection coefficient is zero");
  const double eta = params.eta;
  const double g = params.damping;
  const double a2 = params.gamma_amp * params.gamma_amp;
  const double gamma1_sq = std::exp(-a2) * a2;
  const double bracket = params.norm_c2 * t2 + (eta * g + g / r2 + (1.0 - eta)) * r2 * gamma1_sq;
  const double inverse = std::exp(combined_damping(eta, g) * a2) * eta * r2 * bracket;
  return finish(1.0 / inverse, FormulaId::kTruncationNorm, params, false);
}

OracleReport truncation_fidelity(const NoiseParams& params) {
  params.validate();
  const double eta = params.eta;
  const double g = params.damping;
  const double r = params.ratio;
  const double x = 1.0 - eta * ((1.0 + g * g) / (1.0 - g));
  const double value = 1.0 - x / ((1.0 + r) * (1.0 + r * x));
  return finish(value, FormulaId::kTruncationFidelity, params, true);
}

OracleReport teleport_norm(const NoiseParams& params) {
  params.validate();
  const double eta = params.eta;
  const double g = params.damping;
  const double a2 = params.gamma_amp * params.gamma_amp;
  const double half = (1.0 - g) / 2.0;
  const double bracket = 1.0 + (1.0 / params.ratio) * (4.0 / (1.0 - g) - 3.0 * eta * (1.0 - g));
  const double inverse = std::exp(-eta * (1.0 - g) * a2) * eta * half * half * bracket;
  return finish(1.0 / inverse, FormulaId::kTeleportNorm, params, false);
}

OracleReport teleport_fidelity(const NoiseParams& params) {
  params.validate();
  const double eta = params.eta;
  const double g = params.damping;
  const double r = params.ratio;
  const double numerator = (3.0 + g) / (1.0 - g) - 3.0 * eta * (1.0 - g);
  const double inner = 4.0 / (1.0 - g) - 3.0 * eta * (1.0 - g);
  const double value = 1.0 - numerator / ((1.0 + r) * (1.0 + r * inner));
  return finish(value, FormulaId::kTeleportFidelity, params, true);
}

}  // namespace qscissors
