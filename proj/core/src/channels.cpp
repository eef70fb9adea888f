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

#include "qscissors/channels.hpp"

#include <cmath>
#include <map>
#include <set>
#include <utility>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qscissors/errors.hpp"
#include "qscissors/linear_optics.hpp"

namespace qscissors {

namespace {

constexpr double kSpecTolerance = 1e-12;

// Principal square root of a PSD Hermitian 2x2 matrix; eigenvalues below
// 1e-13 are treated as exact zeros so lossless elements decouple exactly.
Eigen::Matrix2cd psd_sqrt(const Eigen::Matrix2cd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(0.5 * (m + m.adjoint()));
  Eigen::Vector2d values = eig.eigenvalues();
  for (int i = 0; i < 2; ++i) values(i) = values(i) < 1e-13 ? 0.0 : std::sqrt(values(i));
  return eig.eigenvectors() * values.asDiagonal() * eig.eigenvectors().adjoint();
}

std::size_t local_dim(int cutoff_a, int cutoff_b) {
  return static_cast<std::size_t>(cutoff_a + 1) * static_cast<std::size_t>(cutoff_b + 1);
}

struct PairLayout {
  std::size_t pos_a;
  std::size_t pos_b;
  std::vector<std::size_t> rest;    // full-register offsets with both pair modes empty
  std::vector<std::size_t> offset;  // local index -> full-register offset
};

PairLayout pair_layout(const ModeRegister& reg, const std::string& mode_a, const std::string& mode_b) {
  PairLayout layout{reg.position(mode_a), reg.position(mode_b), {}, {}};
  if (layout.pos_a == layout.pos_b) throw RegisterError("pair operator: modes must be distinct");
  const int ca = reg.cutoff(layout.pos_a);
  const int cb = reg.cutoff(layout.pos_b);
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    if (reg.occupation(i, layout.pos_a) == 0 && reg.occupation(i, layout.pos_b) == 0) {
      layout.rest.push_back(i);
    }
  }
  layout.offset.resize(local_dim(ca, cb));
  for (int na = 0; na <= ca; ++na) {
    for (int nb = 0; nb <= cb; ++nb) {
      layout.offset[static_cast<std::size_t>(na * (cb + 1) + nb)] =
          static_cast<std::size_t>(na) * reg.stride(layout.pos_a) +
          static_cast<std::size_t>(nb) * reg.stride(layout.pos_b);
    }
  }
  return layout;
}

double binomial(int m, int n) {
  double c = 1.0;
  for (int k = 1; k <= n; ++k) c = c * (m - n + k) / k;
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Specs

BeamSplitterSpec::BeamSplitterSpec(Complex t, Complex r) : t_(t), r_(r) {
  if (!std::isfinite(t.real()) || !std::isfinite(t.imag()) || !std::isfinite(r.real()) ||
      !std::isfinite(r.imag())) {
    throw PhysicalityError("BeamSplitterSpec: non-finite coefficients");
  }
  const double gamma = damping();
  const double omega = cross_term();
  if (gamma < -kSpecTolerance) {
    throw PhysicalityError("BeamSplitterSpec: |t|^2 + |r|^2 exceeds 1 (Gamma = " + std::to_string(gamma) + ")");
  }
  if (gamma - std::abs(omega) < -kSpecTolerance) {
    throw PhysicalityError("BeamSplitterSpec: noise covariance not PSD (Gamma = " + std::to_string(gamma) +
                           " < |Omega| = " + std::to_string(std::abs(omega)) + ")");
  }
}

BeamSplitterSpec BeamSplitterSpec::symmetric(double damping) {
  if (!(damping >= 0.0 && damping < 1.0)) {
    throw PhysicalityError("BeamSplitterSpec: damping must lie in [0, 1)");
  }
  const double amp = std::sqrt((1.0 - damping) / 2.0);
  return BeamSplitterSpec(Complex(amp, 0.0), Complex(0.0, amp));
}

BeamSplitterSpec BeamSplitterSpec::transmissivity(double transmissivity) {
  if (!(transmissivity >= 0.0 && transmissivity <= 1.0)) {
    throw PhysicalityError("BeamSplitterSpec: transmissivity must lie in [0, 1]");
  }
  return BeamSplitterSpec(Complex(std::sqrt(transmissivity), 0.0), Complex(0.0, std::sqrt(1.0 - transmissivity)));
}

double BeamSplitterSpec::damping() const noexcept { return 1.0 - std::norm(t_) - std::norm(r_); }

double BeamSplitterSpec::cross_term() const noexcept {
  return (t_ * std::conj(r_) + r_ * std::conj(t_)).real();
}

Eigen::Matrix2cd BeamSplitterSpec::scattering() const {
  Eigen::Matrix2cd s;
  s << t_, r_, r_, t_;
  return s;
}

Eigen::Matrix2cd BeamSplitterSpec::noise_covariance() const {
  return Eigen::Matrix2cd::Identity() - scattering() * scattering().adjoint();
}

DetectorSpec::DetectorSpec(double eta) : eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw PhysicalityError("DetectorSpec: efficiency " + std::to_string(eta) + " outside [0, 1]");
  }
}

// ---------------------------------------------------------------------------
// Beam splitters

SparseCMatrix ideal_bs_pair_operator(const BeamSplitterSpec& spec, int cutoff_a, int cutoff_b) {
  const CMatrix s = spec.scattering();
  const auto n = static_cast<Eigen::Index>(local_dim(cutoff_a, cutoff_b));
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (int na = 0; na <= cutoff_a; ++na) {
    for (int nb = 0; nb <= cutoff_b; ++nb) {
      const std::array<int, 2> in{na, nb};
      const int col = na * (cutoff_b + 1) + nb;
      for (const auto& term : scatter(s, in)) {
        if (term.occupation[0] > cutoff_a || term.occupation[1] > cutoff_b) continue;
        const int row = term.occupation[0] * (cutoff_b + 1) + term.occupation[1];
        triplets.emplace_back(row, col, term.amplitude);
      }
    }
  }
  SparseCMatrix op(n, n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

CMatrix ideal_bs_unitary(const BeamSplitterSpec& spec, const ModeRegister& reg, const std::string& mode_a,
                         const std::string& mode_b) {
  if (!spec.lossless()) {
    throw PhysicalityError("ideal_bs_unitary: spec is lossy (Gamma = " + std::to_string(spec.damping()) + ")");
  }
  const SparseCMatrix local =
      ideal_bs_pair_operator(spec, reg.cutoff(reg.position(mode_a)), reg.cutoff(reg.position(mode_b)));
  const auto n = static_cast<Eigen::Index>(reg.dim());
  return apply_pair_operator(local, reg, mode_a, mode_b, CMatrix::Identity(n, n));
}

Eigen::Matrix4cd dilate(const BeamSplitterSpec& spec) {
  const Eigen::Matrix2cd s = spec.scattering();
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  const Eigen::Matrix2cd b = psd_sqrt(id - s * s.adjoint());
  const Eigen::Matrix2cd c = psd_sqrt(id - s.adjoint() * s);
  const Eigen::Matrix2cd d = -s.adjoint();
  // Rotate the environment outputs so the environment-to-environment block
  // is PSD; for a lossless element it becomes the identity.
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd(s.adjoint(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Matrix2cd x = -svd.matrixV() * svd.matrixU().adjoint();
  Eigen::Matrix4cd v;
  v.topLeftCorner<2, 2>() = s;
  v.topRightCorner<2, 2>() = b;
  v.bottomLeftCorner<2, 2>() = x * c;
  v.bottomRightCorner<2, 2>() = x * d;
  return v;
}

// ---------------------------------------------------------------------------
// Kraus channels

KrausChannel::KrausChannel(BeamSplitterSpec source, std::array<std::string, 2> modes, std::array<int, 2> cutoffs,
                           std::shared_ptr<const std::vector<SparseCMatrix>> operators)
    : source_(source), modes_(std::move(modes)), cutoffs_(cutoffs), operators_(std::move(operators)) {
  if (modes_[0] == modes_[1]) throw RegisterError("KrausChannel: modes must be distinct");
}

double KrausChannel::completeness_defect() const {
  const auto n = static_cast<Eigen::Index>(local_dim(cutoffs_[0], cutoffs_[1]));
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& k : operators()) sum += CMatrix(k.adjoint() * k);
  const int cb = cutoffs_[1];
  const int limit = max_retained_total();
  double defect = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i / (cb + 1) + i % (cb + 1) > limit) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j / (cb + 1) + j % (cb + 1) > limit) continue;
      const Complex expected = i == j ? 1.0 : 0.0;
      defect = std::max(defect, std::abs(sum(i, j) - expected));
    }
  }
  return defect;
}

KrausChannel KrausChannel::relabeled(std::string mode_a, std::string mode_b) const {
  return KrausChannel(source_, {std::move(mode_a), std::move(mode_b)}, cutoffs_, operators_);
}

KrausChannel lossy_bs_kraus(const BeamSplitterSpec& spec, const std::string& mode_a, int cutoff_a,
                            const std::string& mode_b, int cutoff_b) {
  if (cutoff_a < 1 || cutoff_b < 1) throw CutoffError("lossy_bs_kraus: cutoffs must be >= 1");
  const CMatrix transfer = dilate(spec).leftCols<2>();
  const int limit = std::min(cutoff_a, cutoff_b);
  const auto n = static_cast<Eigen::Index>(local_dim(cutoff_a, cutoff_b));

  // Keyed by the environment occupation (e1, e2).
  std::map<std::pair<int, int>, std::vector<Eigen::Triplet<Complex>>> by_env;
  for (int na = 0; na <= cutoff_a; ++na) {
    for (int nb = 0; nb <= cutoff_b && na + nb <= limit; ++nb) {
      const std::array<int, 2> in{na, nb};
      const int col = na * (cutoff_b + 1) + nb;
      for (const auto& term : scatter(transfer, in)) {
        const auto& o = term.occupation;
        const int row = o[0] * (cutoff_b + 1) + o[1];
        by_env[{o[2], o[3]}].emplace_back(row, col, term.amplitude);
      }
    }
  }
  auto operators = std::make_shared<std::vector<SparseCMatrix>>();
  operators->reserve(by_env.size());
  for (auto& [env, triplets] : by_env) {
    SparseCMatrix k(n, n);
    k.setFromTriplets(triplets.begin(), triplets.end());
    k.prune(Complex(0.0), 0.0);
    if (k.nonZeros() > 0) operators->push_back(std::move(k));
  }
  return KrausChannel(spec, {mode_a, mode_b}, {cutoff_a, cutoff_b}, std::move(operators));
}

CMatrix apply_pair_operator(const SparseCMatrix& op, const ModeRegister& reg, const std::string& mode_a,
                            const std::string& mode_b, const CMatrix& columns) {
  const PairLayout layout = pair_layout(reg, mode_a, mode_b);
  if (static_cast<std::size_t>(op.rows()) != layout.offset.size() || op.rows() != op.cols()) {
    throw RegisterError("pair operator: local dimension does not match the register cutoffs of '" + mode_a +
                        "' and '" + mode_b + "'");
  }
  if (static_cast<std::size_t>(columns.rows()) != reg.dim()) {
    throw RegisterError("pair operator: column block does not match register dimension");
  }
  CMatrix out = CMatrix::Zero(columns.rows(), columns.cols());
  for (Eigen::Index in = 0; in < op.outerSize(); ++in) {
    const std::size_t in_off = layout.offset[static_cast<std::size_t>(in)];
    for (SparseCMatrix::InnerIterator it(op, in); it; ++it) {
      const std::size_t out_off = layout.offset[static_cast<std::size_t>(it.row())];
      const Complex v = it.value();
      for (std::size_t r : layout.rest) {
        out.row(static_cast<Eigen::Index>(r + out_off)) += v * columns.row(static_cast<Eigen::Index>(r + in_off));
      }
    }
  }
  return out;
}

FockVector apply_unitary(const CMatrix& unitary, const FockVector& psi) {
  if (static_cast<std::size_t>(unitary.cols()) != psi.reg().dim() || unitary.rows() != unitary.cols()) {
    throw RegisterError("apply_unitary: shape mismatch");
  }
  return FockVector(psi.reg(), unitary * psi.amplitudes());
}

DensityOperator apply_channel(const KrausChannel& channel, const DensityOperator& rho) {
  const ModeRegister& reg = rho.reg();
  const std::size_t pa = reg.position(channel.modes()[0]);
  const std::size_t pb = reg.position(channel.modes()[1]);
  if (reg.cutoff(pa) != channel.cutoffs()[0] || reg.cutoff(pb) != channel.cutoffs()[1]) {
    throw RegisterError("apply_channel: register cutoffs of the pair differ from the channel's");
  }
  const CMatrix& a = rho.factor();
  double overflow = 0.0;
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    if (reg.occupation(i, pa) + reg.occupation(i, pb) > channel.max_retained_total()) {
      overflow += a.row(static_cast<Eigen::Index>(i)).squaredNorm();
    }
  }
  if (overflow > 1e-14) {
    throw CutoffError("apply_channel: state carries weight " + std::to_string(overflow) +
                          " above the retained photon number " + std::to_string(channel.max_retained_total()) +
                          " of modes '" + channel.modes()[0] + "', '" + channel.modes()[1] + "'",
                      reg.cutoff(pa) + reg.cutoff(pb));
  }

  const double trace_in = rho.trace();
  std::vector<CMatrix> blocks;
  Eigen::Index total_cols = 0;
  for (const auto& k : channel.operators()) {
    CMatrix block = apply_pair_operator(k, reg, channel.modes()[0], channel.modes()[1], a);
    // Columns carrying a negligible share of the trace are dropped.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      if (block.col(c).squaredNorm() > 1e-32 * trace_in) keep.push_back(c);
    }
    if (keep.empty()) continue;
    CMatrix kept(block.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t j = 0; j < keep.size(); ++j) kept.col(static_cast<Eigen::Index>(j)) = block.col(keep[j]);
    total_cols += kept.cols();
    blocks.push_back(std::move(kept));
  }
  CMatrix factor(a.rows(), total_cols);
  Eigen::Index at = 0;
  for (const auto& b : blocks) {
    factor.middleCols(at, b.cols()) = b;
    at += b.cols();
  }
  return DensityOperator::from_factor(reg, compress_factor(factor));
}

// ---------------------------------------------------------------------------
// Detection

Eigen::VectorXd detector_povm(const DetectorSpec& detector, int clicks, int cutoff) {
  if (cutoff < 0) throw CutoffError("detector_povm: negative cutoff");
  if (clicks < 0) throw PhysicalityError("detector_povm: negative click count");
  const double eta = detector.eta();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(cutoff + 1);
  for (int m = clicks; m <= cutoff; ++m) {
    diag(m) = binomial(m, clicks) * std::pow(eta, clicks) * std::pow(1.0 - eta, m - clicks);
  }
  return diag;
}

PostselectResult postselect(const DensityOperator& rho, const std::vector<DetectionEvent>& events) {
  const ModeRegister& reg = rho.reg();
  std::set<std::string> measured;
  std::vector<std::size_t> positions;
  std::vector<Eigen::VectorXd> povms;
  for (const auto& ev : events) {
    if (!measured.insert(ev.mode).second) {
      throw RegisterError("postselect: mode '" + ev.mode + "' measured twice");
    }
    const std::size_t p = reg.position(ev.mode);
    positions.push_back(p);
    povms.push_back(detector_povm(ev.detector, ev.clicks, reg.cutoff(p)));
  }

  CMatrix weighted = rho.factor();
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    double w = 1.0;
    for (std::size_t e = 0; e < positions.size(); ++e) w *= povms[e](reg.occupation(i, positions[e]));
    weighted.row(static_cast<Eigen::Index>(i)) *= std::sqrt(w);
  }
  const double probability = std::min(weighted.squaredNorm(), 1.0);

  PostselectResult result;
  result.probability = probability;
  if (probability < kImpossibleProbability) return result;

  std::vector<std::string> keep;
  for (const auto& label : reg.labels()) {
    if (!measured.count(label)) keep.push_back(label);
  }
  const DensityOperator conditioned = DensityOperator::from_factor(reg, std::move(weighted));
  result.state = partial_trace(conditioned, keep).normalized();
  return result;
}

}  // namespace qscissors
