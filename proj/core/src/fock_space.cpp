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

#include "qscissors/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <Eigen/Eigenvalues>

#include "qscissors/errors.hpp"

namespace qscissors {

namespace {

constexpr std::size_t kMaxDim = std::size_t{1} << 26;

void require_same_register(const ModeRegister& a, const ModeRegister& b, const char* what) {
  if (!(a == b)) {
    throw RegisterError(std::string(what) + ": register mismatch " + a.describe() + " vs " +
                        b.describe());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ModeRegister

ModeRegister::ModeRegister(std::vector<std::string> labels, std::vector<int> cutoffs)
    : labels_(std::move(labels)), cutoffs_(std::move(cutoffs)) {
  if (labels_.size() != cutoffs_.size()) {
    throw RegisterError("ModeRegister: labels and cutoffs differ in length");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i].empty()) throw RegisterError("ModeRegister: empty mode label");
    if (!seen.insert(labels_[i]).second) {
      throw RegisterError("ModeRegister: duplicate mode label '" + labels_[i] + "'");
    }
    if (cutoffs_[i] < 1) {
      throw RegisterError("ModeRegister: cutoff of mode '" + labels_[i] + "' must be >= 1");
    }
  }
  strides_.assign(labels_.size(), 1);
  dim_ = 1;
  for (std::size_t i = labels_.size(); i-- > 0;) {
    strides_[i] = dim_;
    dim_ *= static_cast<std::size_t>(cutoffs_[i]) + 1;
    if (dim_ > kMaxDim) throw RegisterError("ModeRegister: dimension exceeds " + std::to_string(kMaxDim));
  }
}

ModeRegister ModeRegister::single(std::string label, int cutoff) {
  return ModeRegister({std::move(label)}, {cutoff});
}

bool ModeRegister::contains(std::string_view label) const noexcept {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t ModeRegister::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw RegisterError("unknown mode '" + std::string(label) + "' in register " + describe());
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

int ModeRegister::occupation(std::size_t index, std::size_t mode) const {
  return static_cast<int>((index / strides_[mode]) % (static_cast<std::size_t>(cutoffs_[mode]) + 1));
}

std::vector<int> ModeRegister::occupations(std::size_t index) const {
  std::vector<int> occ(labels_.size());
  for (std::size_t m = 0; m < labels_.size(); ++m) occ[m] = occupation(index, m);
  return occ;
}

std::size_t ModeRegister::index_of(std::span<const int> occ) const {
  if (occ.size() != labels_.size()) {
    throw RegisterError("index_of: occupation tuple has wrong length");
  }
  std::size_t index = 0;
  for (std::size_t m = 0; m < occ.size(); ++m) {
    if (occ[m] < 0 || occ[m] > cutoffs_[m]) {
      throw RegisterError("index_of: occupation " + std::to_string(occ[m]) + " of mode '" +
                          labels_[m] + "' outside [0, " + std::to_string(cutoffs_[m]) + "]");
    }
    index += static_cast<std::size_t>(occ[m]) * strides_[m];
  }
  return index;
}

int ModeRegister::total_photons(std::size_t index) const {
  int total = 0;
  for (std::size_t m = 0; m < labels_.size(); ++m) total += occupation(index, m);
  return total;
}

ModeRegister ModeRegister::concat(const ModeRegister& other) const {
  auto labels = labels_;
  auto cutoffs = cutoffs_;
  for (std::size_t m = 0; m < other.num_modes(); ++m) {
    if (contains(other.label(m))) {
      throw RegisterError("tensor: overlapping mode label '" + other.label(m) + "'");
    }
    labels.push_back(other.label(m));
    cutoffs.push_back(other.cutoff(m));
  }
  return ModeRegister(std::move(labels), std::move(cutoffs));
}

ModeRegister ModeRegister::subset(std::span<const std::string> keep) const {
  std::vector<bool> wanted(labels_.size(), false);
  for (const auto& label : keep) {
    std::size_t p = position(label);
    if (wanted[p]) throw RegisterError("subset: mode '" + label + "' listed twice");
    wanted[p] = true;
  }
  std::vector<std::string> labels;
  std::vector<int> cutoffs;
  for (std::size_t m = 0; m < labels_.size(); ++m) {
    if (wanted[m]) {
      labels.push_back(labels_[m]);
      cutoffs.push_back(cutoffs_[m]);
    }
  }
  return ModeRegister(std::move(labels), std::move(cutoffs));
}

ModeRegister ModeRegister::with_cutoffs(std::vector<int> cutoffs) const {
  return ModeRegister(labels_, std::move(cutoffs));
}

std::string ModeRegister::describe() const {
  std::ostringstream out;
  out << '{';
  for (std::size_t m = 0; m < labels_.size(); ++m) {
    if (m) out << ", ";
    out << labels_[m] << ':' << cutoffs_[m];
  }
  out << '}';
  return out.str();
}

// ---------------------------------------------------------------------------
// FockVector

FockVector::FockVector(ModeRegister reg, CVector amplitudes)
    : reg_(std::move(reg)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != reg_.dim()) {
    throw RegisterError("FockVector: amplitude count " + std::to_string(amps_.size()) +
                        " does not match register dimension " + std::to_string(reg_.dim()));
  }
  const double n2 = amps_.squaredNorm();
  if (!std::isfinite(n2) || n2 > 1.0 + 1e-12) {
    throw PhysicalityError("FockVector: squared norm " + std::to_string(n2) + " exceeds 1");
  }
}

FockVector FockVector::basis(ModeRegister reg, std::span<const int> occupations) {
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(reg.dim()));
  amps(static_cast<Eigen::Index>(reg.index_of(occupations))) = 1.0;
  return FockVector(std::move(reg), std::move(amps));
}

FockVector FockVector::vacuum(ModeRegister reg) {
  std::vector<int> zeros(reg.num_modes(), 0);
  return basis(std::move(reg), zeros);
}

Complex FockVector::amplitude(std::span<const int> occupations) const {
  return amps_(static_cast<Eigen::Index>(reg_.index_of(occupations)));
}

FockVector FockVector::normalized() const {
  const double n = std::sqrt(norm2());
  if (n == 0.0) throw PhysicalityError("FockVector: cannot normalize the zero vector");
  return FockVector(reg_, amps_ / n);
}

Complex FockVector::inner(const FockVector& other) const {
  require_same_register(reg_, other.reg_, "inner");
  return amps_.dot(other.amps_);
}

FockVector FockVector::embed(const ModeRegister& larger) const {
  if (larger.labels() != reg_.labels()) throw RegisterError("embed: labels differ");
  CVector out = CVector::Zero(static_cast<Eigen::Index>(larger.dim()));
  for (std::size_t i = 0; i < reg_.dim(); ++i) {
    out(static_cast<Eigen::Index>(larger.index_of(reg_.occupations(i)))) =
        amps_(static_cast<Eigen::Index>(i));
  }
  return FockVector(larger, std::move(out));
}

FockVector FockVector::relabeled(std::vector<std::string> labels) const {
  return FockVector(ModeRegister(std::move(labels), reg_.cutoffs()), amps_);
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(ModeRegister reg, CMatrix factor)
    : reg_(std::move(reg)), factor_(std::move(factor)) {
  if (static_cast<std::size_t>(factor_.rows()) != reg_.dim()) {
    throw RegisterError("DensityOperator: factor rows do not match register dimension");
  }
  const double tr = factor_.squaredNorm();
  if (!std::isfinite(tr) || tr > 1.0 + 1e-12) {
    throw PhysicalityError("DensityOperator: trace " + std::to_string(tr) + " exceeds 1");
  }
}

DensityOperator DensityOperator::pure(const FockVector& psi) {
  return DensityOperator(psi.reg(), psi.amplitudes());
}

DensityOperator DensityOperator::from_matrix(ModeRegister reg, const CMatrix& rho) {
  const auto n = static_cast<Eigen::Index>(reg.dim());
  if (rho.rows() != n || rho.cols() != n) {
    throw RegisterError("DensityOperator: matrix shape does not match register");
  }
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-12) {
    throw PhysicalityError("DensityOperator: matrix not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const CMatrix h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(h);
  const auto& values = eig.eigenvalues();
  if (values.size() > 0 && values.minCoeff() < -1e-10) {
    throw PhysicalityError("DensityOperator: negative eigenvalue " + std::to_string(values.minCoeff()));
  }
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > 0.0) kept.push_back(k);
  }
  CMatrix factor(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    factor.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(kept[j]) * std::sqrt(values(kept[j]));
  }
  return DensityOperator(std::move(reg), std::move(factor));
}

DensityOperator DensityOperator::from_factor(ModeRegister reg, CMatrix factor) {
  return DensityOperator(std::move(reg), std::move(factor));
}

CMatrix DensityOperator::matrix() const {
  CMatrix rho = factor_ * factor_.adjoint();
  // Exact Hermiticity, independent of the product's rounding.
  return 0.5 * (rho + rho.adjoint());
}

Eigen::VectorXd DensityOperator::diagonal() const {
  return factor_.rowwise().squaredNorm();
}

DensityOperator DensityOperator::scaled(double weight) const {
  if (weight < 0.0) throw PhysicalityError("DensityOperator: negative weight");
  return DensityOperator(reg_, factor_ * std::sqrt(weight));
}

DensityOperator DensityOperator::normalized() const {
  const double tr = trace();
  if (tr <= 0.0) throw PhysicalityError("DensityOperator: cannot normalize a zero operator");
  return DensityOperator(reg_, factor_ / std::sqrt(tr));
}

DensityOperator DensityOperator::embed(const ModeRegister& larger) const {
  if (larger.labels() != reg_.labels()) throw RegisterError("embed: labels differ");
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(larger.dim()), factor_.cols());
  for (std::size_t i = 0; i < reg_.dim(); ++i) {
    out.row(static_cast<Eigen::Index>(larger.index_of(reg_.occupations(i)))) =
        factor_.row(static_cast<Eigen::Index>(i));
  }
  return DensityOperator(larger, std::move(out));
}

DensityOperator DensityOperator::relabeled(std::vector<std::string> labels) const {
  return DensityOperator(ModeRegister(std::move(labels), reg_.cutoffs()), factor_);
}

CMatrix compress_factor(const CMatrix& factor) {
  if (factor.cols() <= factor.rows()) return factor;
  CMatrix gram = factor * factor.adjoint();
  gram = 0.5 * (gram + gram.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
  const auto& values = eig.eigenvalues();
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values(k) > 0.0) kept.push_back(k);
  }
  CMatrix out(factor.rows(), static_cast<Eigen::Index>(kept.size()));
  for (std::size_t j = 0; j < kept.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) = eig.eigenvectors().col(kept[j]) * std::sqrt(values(kept[j]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Composition

namespace {

// Kronecker product of two column blocks; rows of x are the slow index.
CMatrix kron_columns(const CMatrix& x, const CMatrix& y) {
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    for (Eigen::Index j = 0; j < y.cols(); ++j) {
      auto col = out.col(i * y.cols() + j);
      for (Eigen::Index r = 0; r < x.rows(); ++r) {
        col.segment(r * y.rows(), y.rows()) = x(r, i) * y.col(j);
      }
    }
  }
  return out;
}

}  // namespace

FockVector tensor(const FockVector& x, const FockVector& y) {
  ModeRegister reg = x.reg().concat(y.reg());
  CMatrix k = kron_columns(x.amplitudes(), y.amplitudes());
  return FockVector(std::move(reg), k.col(0));
}

DensityOperator tensor(const DensityOperator& x, const DensityOperator& y) {
  ModeRegister reg = x.reg().concat(y.reg());
  return DensityOperator::from_factor(std::move(reg), kron_columns(x.factor(), y.factor()));
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::string> keep) {
  const ModeRegister& reg = rho.reg();
  ModeRegister kept_reg = reg.subset(keep);
  if (kept_reg.num_modes() == reg.num_modes()) return rho;

  std::vector<std::size_t> kept_pos, traced_pos;
  for (std::size_t m = 0; m < reg.num_modes(); ++m) {
    (kept_reg.contains(reg.label(m)) ? kept_pos : traced_pos).push_back(m);
  }
  std::vector<std::string> traced_labels;
  std::vector<int> traced_cutoffs;
  for (auto m : traced_pos) {
    traced_labels.push_back(reg.label(m));
    traced_cutoffs.push_back(reg.cutoff(m));
  }
  const ModeRegister traced_reg(traced_labels, traced_cutoffs);

  const auto rank = rho.factor().cols();
  const auto traced_dim = static_cast<Eigen::Index>(traced_reg.dim());
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kept_reg.dim()), traced_dim * rank);
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    std::size_t k = 0, t = 0;
    for (std::size_t j = 0; j < kept_pos.size(); ++j) {
      k += static_cast<std::size_t>(reg.occupation(i, kept_pos[j])) * kept_reg.stride(j);
    }
    for (std::size_t j = 0; j < traced_pos.size(); ++j) {
      t += static_cast<std::size_t>(reg.occupation(i, traced_pos[j])) * traced_reg.stride(j);
    }
    out.row(static_cast<Eigen::Index>(k)).segment(static_cast<Eigen::Index>(t) * rank, rank) =
        rho.factor().row(static_cast<Eigen::Index>(i));
  }
  return DensityOperator::from_factor(std::move(kept_reg), compress_factor(out));
}

double fidelity(const DensityOperator& rho, const FockVector& target) {
  require_same_register(rho.reg(), target.reg(), "fidelity");
  if (std::abs(target.norm2() - 1.0) > 1e-10) {
    throw PhysicalityError("fidelity: target is not normalized (norm^2 = " +
                           std::to_string(target.norm2()) + ")");
  }
  const double value = (rho.factor().adjoint() * target.amplitudes()).squaredNorm();
  if (value < -1e-10 || value > 1.0 + 1e-10) {
    throw PhysicalityError("fidelity: value " + std::to_string(value) + " outside [0, 1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

double fidelity(const FockVector& psi, const FockVector& target) {
  return fidelity(DensityOperator::pure(psi), target);
}

// ---------------------------------------------------------------------------
// Coherent drive

double poisson_tail(double mean, int cutoff) {
  if (mean <= 0.0) return 0.0;
  const double log_mean = std::log(mean);
  double tail = 0.0;
  for (int n = cutoff + 1;; ++n) {
    const double term = std::exp(-mean + n * log_mean - std::lgamma(n + 1.0));
    tail += term;
    // Terms decrease geometrically once n exceeds the mean.
    if (n > mean && term <= tail * 1e-17) break;
    if (n > cutoff + 100000) break;
  }
  return tail;
}

int required_cutoff(Complex gamma, double tail_eps, int hard_max) {
  const double mean = std::norm(gamma);
  for (int k = 1; k <= hard_max; ++k) {
    if (poisson_tail(mean, k) < tail_eps) return k;
  }
  int k = hard_max + 1;
  while (poisson_tail(mean, k) >= tail_eps && k < 100000) ++k;
  throw CutoffError("coherent drive |gamma|=" + std::to_string(std::abs(gamma)) +
                        " needs cutoff " + std::to_string(k) + " for tail < " +
                        std::to_string(tail_eps) + ", above the hard maximum " +
                        std::to_string(hard_max),
                    k);
}

CoherentDrive CoherentDrive::from_ratio(double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) {
    throw PhysicalityError("CoherentDrive: ratio must be finite and positive");
  }
  CoherentDrive drive;
  drive.gamma = Complex(1.0 / std::sqrt(ratio), 0.0);
  return drive;
}

int CoherentDrive::resolved_cutoff() const {
  if (!(tail_eps > 0.0)) throw PhysicalityError("CoherentDrive: tail_eps must be positive");
  if (!cutoff) return required_cutoff(gamma, tail_eps, max_cutoff);
  if (*cutoff < 1) throw CutoffError("CoherentDrive: cutoff must be >= 1", 1);
  if (poisson_tail(std::norm(gamma), *cutoff) >= tail_eps) {
    const int needed = required_cutoff(gamma, tail_eps, std::numeric_limits<int>::max() / 2);
    throw CutoffError("coherent drive cutoff " + std::to_string(*cutoff) +
                          " leaves a tail above " + std::to_string(tail_eps) +
                          "; required cutoff is " + std::to_string(needed),
                      needed);
  }
  return *cutoff;
}

Complex CoherentDrive::amplitude(int n) const {
  Complex amp = std::exp(-0.5 * std::norm(gamma));
  for (int k = 1; k <= n; ++k) amp *= gamma / std::sqrt(static_cast<double>(k));
  return amp;
}

double CoherentDrive::norm_c2() const {
  return std::norm(gamma0()) + std::norm(gamma1());
}

double CoherentDrive::ratio() const {
  const double g1 = std::norm(gamma1());
  if (g1 == 0.0) return std::numeric_limits<double>::infinity();
  return std::norm(gamma0()) / g1;
}

FockVector coherent_amplitudes(const CoherentDrive& drive, std::string label) {
  const int cutoff = drive.resolved_cutoff();
  CVector amps(cutoff + 1);
  amps(0) = std::exp(-0.5 * std::norm(drive.gamma));
  for (int n = 1; n <= cutoff; ++n) {
    amps(n) = amps(n - 1) * drive.gamma / std::sqrt(static_cast<double>(n));
  }
  return FockVector(ModeRegister::single(std::move(label), cutoff), std::move(amps));
}

}  // namespace qscissors
