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

// Truncated multimode Fock space: registers, pure and mixed states, and the
// coherent drive used by the scissors stage.
//
// Basis order: lexicographic over occupation tuples, the first listed mode
// being the most significant digit. For modes (a, b) with cutoffs (1, 2) the
// order is |00>, |01>, |02>, |10>, |11>, |12>.

#ifndef QSCISSORS_FOCK_SPACE_HPP
#define QSCISSORS_FOCK_SPACE_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qscissors {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// Ordered set of named bosonic modes, each truncated at an inclusive
/// maximum photon number. A register with no modes has dimension 1.
class ModeRegister {
 public:
  ModeRegister() = default;
  ModeRegister(std::vector<std::string> labels, std::vector<int> cutoffs);

  static ModeRegister single(std::string label, int cutoff);

  std::size_t num_modes() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::vector<int>& cutoffs() const noexcept { return cutoffs_; }
  const std::string& label(std::size_t mode) const { return labels_.at(mode); }
  int cutoff(std::size_t mode) const { return cutoffs_.at(mode); }
  std::size_t stride(std::size_t mode) const { return strides_.at(mode); }

  bool contains(std::string_view label) const noexcept;
  /// Position of `label`; throws RegisterError if absent.
  std::size_t position(std::string_view label) const;

  int occupation(std::size_t index, std::size_t mode) const;
  std::vector<int> occupations(std::size_t index) const;
  std::size_t index_of(std::span<const int> occupations) const;
  int total_photons(std::size_t index) const;

  /// Modes of *this followed by modes of `other`. Labels must be disjoint.
  ModeRegister concat(const ModeRegister& other) const;
  /// The listed modes, kept in this register's order.
  ModeRegister subset(std::span<const std::string> keep) const;
  /// Same labels with cutoffs replaced.
  ModeRegister with_cutoffs(std::vector<int> cutoffs) const;

  bool operator==(const ModeRegister& other) const noexcept {
    return labels_ == other.labels_ && cutoffs_ == other.cutoffs_;
  }

  std::string describe() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t dim_ = 1;
};

/// Pure (possibly sub-normalized) state on a ModeRegister.
class FockVector {
 public:
  /// Throws PhysicalityError if the squared norm exceeds 1 + 1e-12.
  FockVector(ModeRegister reg, CVector amplitudes);

  static FockVector basis(ModeRegister reg, std::span<const int> occupations);
  static FockVector vacuum(ModeRegister reg);

  const ModeRegister& reg() const noexcept { return reg_; }
  const CVector& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::span<const int> occupations) const;

  double norm2() const { return amps_.squaredNorm(); }
  /// True for intermediate post-selection results with norm below one.
  bool is_subnormalized(double tol = 1e-12) const { return norm2() < 1.0 - tol; }
  FockVector normalized() const;

  /// <this|other>; registers must match.
  Complex inner(const FockVector& other) const;
  /// Zero-pads into a register with the same labels and cutoffs no smaller.
  FockVector embed(const ModeRegister& larger) const;
  /// Same amplitudes under new labels (cutoffs unchanged).
  FockVector relabeled(std::vector<std::string> labels) const;

 private:
  ModeRegister reg_;
  CVector amps_;
};

/// Mixed state. Stored as a factor F with rho = F F^dagger, which keeps the
/// operator Hermitian and positive by construction; matrix() materializes it.
class DensityOperator {
 public:
  static DensityOperator pure(const FockVector& psi);
  /// Validates Hermiticity (1e-12), positivity (-1e-10) and trace.
  static DensityOperator from_matrix(ModeRegister reg, const CMatrix& rho);
  static DensityOperator from_factor(ModeRegister reg, CMatrix factor);

  const ModeRegister& reg() const noexcept { return reg_; }
  const CMatrix& factor() const noexcept { return factor_; }
  std::size_t rank_bound() const noexcept { return static_cast<std::size_t>(factor_.cols()); }

  CMatrix matrix() const;
  Eigen::VectorXd diagonal() const;
  double trace() const { return factor_.squaredNorm(); }

  DensityOperator scaled(double weight) const;
  DensityOperator normalized() const;
  DensityOperator embed(const ModeRegister& larger) const;
  DensityOperator relabeled(std::vector<std::string> labels) const;

 private:
  DensityOperator(ModeRegister reg, CMatrix factor);
  ModeRegister reg_;
  CMatrix factor_;
};

/// Re-factorizes so the factor has at most dim() columns. Used internally
/// after channel application and partial traces.
CMatrix compress_factor(const CMatrix& factor);

FockVector tensor(const FockVector& x, const FockVector& y);
DensityOperator tensor(const DensityOperator& x, const DensityOperator& y);

/// Reduced state on `keep`; output modes follow the input register's order.
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep);

/// <target|rho|target> for a normalized target on the same register.
double fidelity(const DensityOperator& rho, const FockVector& target);
double fidelity(const FockVector& psi, const FockVector& target);

/// Coherent state |gamma> truncated at a photon-number cutoff.
struct CoherentDrive {
  Complex gamma{1.0, 0.0};
  /// Explicit cutoff; when empty the smallest cutoff meeting tail_eps is used.
  std::optional<int> cutoff;
  double tail_eps = 1e-12;
  /// Largest cutoff the automatic search may pick.
  int max_cutoff = 80;

  static CoherentDrive from_ratio(double ratio);

  /// Cutoff to use. Throws CutoffError naming the required cutoff when the
  /// explicit cutoff (or max_cutoff) leaves a tail of tail_eps or more.
  int resolved_cutoff() const;

  /// e^{-|gamma|^2/2} gamma^n / sqrt(n!)
  Complex amplitude(int n) const;
  Complex gamma0() const { return amplitude(0); }
  Complex gamma1() const { return amplitude(1); }
  /// |gamma_0|^2 + |gamma_1|^2
  double norm_c2() const;
  /// (|gamma_0| / |gamma_1|)^2; infinite for the vacuum drive.
  double ratio() const;
};

/// Poisson weight discarded above `cutoff`.
double poisson_tail(double mean_photons, int cutoff);
/// Smallest cutoff whose discarded weight is below tail_eps.
int required_cutoff(Complex gamma, double tail_eps, int hard_max);

/// Amplitudes gamma_n for n <= cutoff on a single mode; not renormalized.
FockVector coherent_amplitudes(const CoherentDrive& drive, std::string label = "e");

}  // namespace qscissors

#endif  // QSCISSORS_FOCK_SPACE_HPP
