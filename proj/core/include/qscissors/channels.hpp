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

// Optical elements as quantum operations.
//
// Beam splitters follow a -> t a + r b, b -> t b + r a on creation operators.
// A lossy element (|t|^2 + |r|^2 < 1) is realized as a 4-mode unitary on the
// two system modes plus two vacuum environment modes that are traced out
// right after the element acts. Photon counters are diagonal binomial POVMs.

#ifndef QSCISSORS_CHANNELS_HPP
#define QSCISSORS_CHANNELS_HPP

#include <algorithm>
#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qscissors/fock_space.hpp"

namespace qscissors {

using SparseCMatrix = Eigen::SparseMatrix<Complex>;

class BeamSplitterSpec {
 public:
  /// Rejects specs whose noise covariance I - S S^dagger is not PSD.
  BeamSplitterSpec(Complex t, Complex r);

  /// 50/50 element with damping Gamma: |t| = |r| = sqrt((1 - Gamma)/2),
  /// t real and r = i|r|.
  static BeamSplitterSpec symmetric(double damping = 0.0);
  /// Lossless element with t = sqrt(transmissivity), r = i sqrt(1 - transmissivity).
  static BeamSplitterSpec transmissivity(double transmissivity);

  Complex t() const noexcept { return t_; }
  Complex r() const noexcept { return r_; }
  /// Gamma = 1 - |t|^2 - |r|^2
  double damping() const noexcept;
  /// Omega = t r* + r t*
  double cross_term() const noexcept;
  bool lossless(double tol = 1e-14) const noexcept { return damping() <= tol; }

  Eigen::Matrix2cd scattering() const;
  /// [[Gamma, -Omega], [-Omega, Gamma]]
  Eigen::Matrix2cd noise_covariance() const;

  bool operator==(const BeamSplitterSpec&) const = default;

 private:
  Complex t_;
  Complex r_;
};

class DetectorSpec {
 public:
  explicit DetectorSpec(double eta = 1.0);
  double eta() const noexcept { return eta_; }

 private:
  double eta_;
};

/// Number-conserving two-mode operator in the local basis |n_a, n_b>
/// (index n_a * (cutoff_b + 1) + n_b). Only blocks with n_a + n_b <=
/// min(cutoff_a, cutoff_b) are exact; those are the retained blocks.
SparseCMatrix ideal_bs_pair_operator(const BeamSplitterSpec& spec, int cutoff_a, int cutoff_b);

/// Ideal (lossless) beam splitter on `mode_a`, `mode_b` of `reg`, as a dense
/// matrix over the full register. Throws PhysicalityError for lossy specs.
CMatrix ideal_bs_unitary(const BeamSplitterSpec& spec, const ModeRegister& reg,
                         const std::string& mode_a, const std::string& mode_b);

/// 4x4 unitary [[S, B], [C, D]] with S the scattering matrix. B B^dagger
/// equals the noise covariance. Lossless specs give S (+) I.
Eigen::Matrix4cd dilate(const BeamSplitterSpec& spec);

class KrausChannel {
 public:
  KrausChannel(BeamSplitterSpec source, std::array<std::string, 2> modes, std::array<int, 2> cutoffs,
               std::shared_ptr<const std::vector<SparseCMatrix>> operators);

  const BeamSplitterSpec& source() const noexcept { return source_; }
  const std::array<std::string, 2>& modes() const noexcept { return modes_; }
  const std::array<int, 2>& cutoffs() const noexcept { return cutoffs_; }
  /// Largest total photon number in the pair that the channel handles exactly.
  int max_retained_total() const noexcept { return std::min(cutoffs_[0], cutoffs_[1]); }
  const std::vector<SparseCMatrix>& operators() const noexcept { return *operators_; }

  /// max |sum_k K_k^dagger K_k - I| over the retained blocks.
  double completeness_defect() const;

  KrausChannel relabeled(std::string mode_a, std::string mode_b) const;

 private:
  BeamSplitterSpec source_;
  std::array<std::string, 2> modes_;
  std::array<int, 2> cutoffs_;
  std::shared_ptr<const std::vector<SparseCMatrix>> operators_;
};

/// K_{jk} = <j, k|_env U(V) |0, 0>_env restricted to the retained blocks.
/// Operators that vanish identically are dropped, so a lossless spec yields
/// the single ideal unitary.
KrausChannel lossy_bs_kraus(const BeamSplitterSpec& spec, const std::string& mode_a, int cutoff_a,
                            const std::string& mode_b, int cutoff_b);

/// Applies a pair operator to every column of a full-register block.
CMatrix apply_pair_operator(const SparseCMatrix& op, const ModeRegister& reg, const std::string& mode_a,
                            const std::string& mode_b, const CMatrix& columns);

FockVector apply_unitary(const CMatrix& unitary, const FockVector& psi);

/// sum_k K_k rho K_k^dagger. Throws CutoffError if rho has weight above 1e-14
/// outside the channel's retained blocks.
DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho);

/// Diagonal of E_n = sum_{m >= n} C(m, n) eta^n (1 - eta)^{m - n} |m><m|,
/// restricted to m <= cutoff (all zero when clicks > cutoff).
Eigen::VectorXd detector_povm(const DetectorSpec& detector, int clicks, int cutoff);

struct DetectionEvent {
  std::string mode;
  DetectorSpec detector;
  int clicks = 0;
};

struct PostselectResult {
  /// Normalized conditional state on the unmeasured modes; empty when the
  /// outcome is impossible.
  std::optional<DensityOperator> state;
  double probability = 0.0;

  bool impossible() const noexcept { return !state.has_value(); }
};

/// Outcomes with probability below this are reported as impossible.
inline constexpr double kImpossibleProbability = 1e-300;

PostselectResult postselect(const DensityOperator& rho, const std::vector<DetectionEvent>& events);

}  // namespace qscissors

#endif  // QSCISSORS_CHANNELS_HPP
