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

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qscissors/analytic.hpp"
#include "qscissors/channels.hpp"
#include "qscissors/errors.hpp"
#include "qscissors/fock_space.hpp"
#include "qscissors/linear_optics.hpp"

using namespace qscissors;

namespace {

const Complex kI(0.0, 1.0);

FockVector ket(const ModeRegister& reg, std::vector<int> occ) { return FockVector::basis(reg, occ); }

BeamSplitterSpec spec_from(const oracles::SpecSample& s) { return BeamSplitterSpec(s.t, s.r); }

FockVector random_state(const ModeRegister& reg, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(static_cast<Eigen::Index>(reg.dim()));
  for (auto& x : v) x = Complex(g(rng), g(rng));
  v.normalize();
  return FockVector(reg, v);
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal splitter

TEST(IdealSplitter, SinglePhotonGoesToSymmetricSuperposition) {
  const ModeRegister reg({"a", "b"}, {1, 1});
  const CMatrix u = ideal_bs_unitary(BeamSplitterSpec::symmetric(), reg, "a", "b");
  const FockVector out = apply_unitary(u, ket(reg, {1, 0}));
  const double s = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(out.amplitude(std::vector<int>{1, 0}) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude(std::vector<int>{0, 1}) - kI * s), 0.0, 1e-15);
}

TEST(IdealSplitter, TwoPhotonInterferenceCancelsCoincidences) {
  const ModeRegister reg({"b", "c"}, {2, 2});
  const CMatrix u = ideal_bs_unitary(BeamSplitterSpec::symmetric(), reg, "b", "c");
  const FockVector out = apply_unitary(u, ket(reg, {1, 1}));
  EXPECT_LT(std::abs(out.amplitude(std::vector<int>{1, 1})), 1e-15);
  EXPECT_NEAR(out.norm2(), 1.0, 1e-14);
  EXPECT_NEAR(std::norm(out.amplitude(std::vector<int>{2, 0})), 0.5, 1e-14);
}

TEST(IdealSplitter, UnitaryOnPhotonNumberSectorsWithinCutoff) {
  const ModeRegister reg({"x", "a", "b"}, {1, 3, 3});
  const BeamSplitterSpec spec(Complex(0.6, 0.0), Complex(0.0, 0.8));
  const CMatrix u = ideal_bs_unitary(spec, reg, "a", "b");
  const CMatrix g = u.adjoint() * u;
  for (std::size_t i = 0; i < reg.dim(); ++i) {
    const auto oi = reg.occupations(i);
    if (oi[1] + oi[2] > 3) continue;
    for (std::size_t j = 0; j < reg.dim(); ++j) {
      const auto oj = reg.occupations(j);
      if (oj[1] + oj[2] > 3) continue;
      const double expect = i == j ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(g(i, j) - expect), 0.0, 1e-14);
    }
  }
}

TEST(IdealSplitter, RejectsLossySpec) {
  const ModeRegister reg({"a", "b"}, {1, 1});
  EXPECT_THROW(ideal_bs_unitary(BeamSplitterSpec::symmetric(0.1), reg, "a", "b"), PhysicalityError);
}

TEST(Scatter, MatchesBinomialExpansion) {
  // (t a + r b)^2 / sqrt2 applied to |2, 0> for a 2x2 transfer.
  CMatrix w(2, 2);
  w << 0.6, 0.8, Complex(0.0, 0.8), Complex(0.0, -0.6);
  const std::array<int, 2> in{2, 0};
  const auto terms = scatter(w, in);
  double norm2 = 0.0;
  for (const auto& term : terms) {
    const int n0 = term.occupation[0];
    const Complex expected = std::sqrt(oracles::binomial(2, n0)) * std::pow(w(0, 0), n0) * std::pow(w(1, 0), 2 - n0);
    EXPECT_NEAR(std::abs(term.amplitude - expected), 0.0, 1e-15);
    norm2 += std::norm(term.amplitude);
  }
  EXPECT_NEAR(norm2, 1.0, 1e-14);
}

// ---------------------------------------------------------------------------
// Specs and dilation

TEST(BeamSplitterSpec, RejectsUnphysicalCoefficients) {
  EXPECT_THROW(BeamSplitterSpec(0.8, 0.8), PhysicalityError);
  // |t|^2 + |r|^2 = 0.98 but Gamma = 0.02 < |Omega| = 0.98.
  EXPECT_THROW(BeamSplitterSpec(0.7, 0.7), PhysicalityError);
  EXPECT_THROW(BeamSplitterSpec::symmetric(1.0), PhysicalityError);
  EXPECT_THROW(BeamSplitterSpec::symmetric(-0.1), PhysicalityError);
  EXPECT_THROW(DetectorSpec(1.2), PhysicalityError);
}

TEST(BeamSplitterSpec, SymmetricHasRequestedDampingAndNoCrossTerm) {
  for (double g : {0.0, 0.02, 0.1, 0.5}) {
    const BeamSplitterSpec s = BeamSplitterSpec::symmetric(g);
    EXPECT_NEAR(s.damping(), g, 1e-15);
    EXPECT_NEAR(s.cross_term(), 0.0, 1e-15);
    EXPECT_EQ(s.t().imag(), 0.0);
    EXPECT_EQ(s.r().real(), 0.0);
  }
}

TEST(Dilation, IsUnitaryWithScatteringBlockAndNoiseCovariance) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    const BeamSplitterSpec spec = spec_from(oracles::random_physical_spec(rng));
    const Eigen::Matrix4cd v = dilate(spec);
    EXPECT_LT((v.adjoint() * v - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((v.topLeftCorner<2, 2>() - spec.scattering()).cwiseAbs().maxCoeff(), 1e-15);
    const Eigen::Matrix2cd b = v.topRightCorner<2, 2>();
    const Eigen::Matrix2cd n{{spec.damping(), -spec.cross_term()}, {-spec.cross_term(), spec.damping()}};
    EXPECT_LT((b * b.adjoint() - n).cwiseAbs().maxCoeff(), 1e-12);
  }
}

// ---------------------------------------------------------------------------
// Kraus channels

TEST(Kraus, CompletenessOnRetainedBlocksForRandomSpecs) {
  std::mt19937_64 rng(1234);
  for (int k = 0; k < 20; ++k) {
    const BeamSplitterSpec spec = spec_from(oracles::random_physical_spec(rng));
    const int ca = 3, cb = 4;
    const KrausChannel ch = lossy_bs_kraus(spec, "a", ca, "b", cb);
    const Eigen::Index n = (ca + 1) * (cb + 1);
    CMatrix sum = CMatrix::Zero(n, n);
    for (const auto& op : ch.operators()) sum += CMatrix(op.adjoint() * op);
    for (int i = 0; i < n; ++i) {
      if (i / (cb + 1) + i % (cb + 1) > ch.max_retained_total()) continue;
      for (int j = 0; j < n; ++j) {
        if (j / (cb + 1) + j % (cb + 1) > ch.max_retained_total()) continue;
        const double expect = i == j ? 1.0 : 0.0;
        EXPECT_NEAR(std::abs(sum(i, j) - expect), 0.0, 1e-10) << "spec " << k;
      }
    }
    EXPECT_LT(ch.completeness_defect(), 1e-10);
  }
}

TEST(Kraus, LosslessSpecGivesSingleUnitaryOperator) {
  const BeamSplitterSpec spec = BeamSplitterSpec::symmetric();
  const KrausChannel ch = lossy_bs_kraus(spec, "a", 2, "b", 2);
  EXPECT_EQ(ch.operators().size(), 1u);
  const ModeRegister reg({"a", "b"}, {2, 2});
  std::mt19937_64 rng(4);
  CVector v = CVector::Zero(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 9; ++i) {
    if (reg.total_photons(i) <= 2) v(i) = Complex(g(rng), g(rng));
  }
  v.normalize();
  const FockVector psi(reg, v);
  const DensityOperator out = apply_channel(ch, DensityOperator::pure(psi));
  const FockVector expected = apply_unitary(ideal_bs_unitary(spec, reg, "a", "b"), psi);
  EXPECT_NEAR(fidelity(out, expected), 1.0, 1e-13);
}

TEST(Kraus, SinglePhotonLossProbability) {
  std::mt19937_64 rng(77);
  const ModeRegister reg({"a", "b"}, {1, 1});
  for (int k = 0; k < 20; ++k) {
    const BeamSplitterSpec spec = spec_from(oracles::random_physical_spec(rng));
    const Complex alpha = oracles::random_unit_complex(rng) * std::sqrt(0.3);
    const Complex beta = oracles::random_unit_complex(rng) * std::sqrt(0.7);
    CVector v = CVector::Zero(4);
    v(reg.index_of(std::vector<int>{1, 0})) = alpha;
    v(reg.index_of(std::vector<int>{0, 1})) = beta;
    const DensityOperator out =
        apply_channel(lossy_bs_kraus(spec, "a", 1, "b", 1), DensityOperator::pure(FockVector(reg, v)));
    const double p_vacuum = out.diagonal()(0);
    const double expected = spec.damping() - 2.0 * spec.cross_term() * std::real(alpha * std::conj(beta));
    EXPECT_NEAR(p_vacuum, expected, 1e-12);
    EXPECT_NEAR(out.trace(), 1.0, 1e-12);
  }
}

TEST(Kraus, SymmetricLossKeepsHalfOfSurvivingPhotonPerPort) {
  const ModeRegister reg({"a", "b"}, {1, 1});
  const double g = 0.1;
  const DensityOperator out = apply_channel(lossy_bs_kraus(BeamSplitterSpec::symmetric(g), "a", 1, "b", 1),
                                            DensityOperator::pure(ket(reg, {1, 0})));
  const Eigen::VectorXd p = out.diagonal();
  EXPECT_NEAR(p(0), g, 1e-14);
  EXPECT_NEAR(p(1), (1.0 - g) / 2.0, 1e-14);
  EXPECT_NEAR(p(2), (1.0 - g) / 2.0, 1e-14);
}

TEST(Kraus, RelabeledChannelActsOnOtherModes) {
  const KrausChannel ch = lossy_bs_kraus(BeamSplitterSpec::symmetric(0.05), "a", 1, "b", 1);
  const KrausChannel moved = ch.relabeled("c", "d");
  const ModeRegister reg({"c", "d"}, {1, 1});
  const DensityOperator out = apply_channel(moved, DensityOperator::pure(ket(reg, {1, 0})));
  EXPECT_NEAR(out.diagonal()(0), 0.05, 1e-14);
}

TEST(Kraus, WeightOutsideRetainedBlocksIsRejected) {
  const KrausChannel ch = lossy_bs_kraus(BeamSplitterSpec::symmetric(0.05), "a", 2, "b", 2);
  const ModeRegister reg({"a", "b"}, {2, 2});
  EXPECT_THROW(apply_channel(ch, DensityOperator::pure(ket(reg, {2, 1}))), CutoffError);
}

TEST(Kraus, CutoffMismatchIsRejected) {
  const KrausChannel ch = lossy_bs_kraus(BeamSplitterSpec::symmetric(0.05), "a", 1, "b", 1);
  const ModeRegister reg({"a", "b"}, {2, 1});
  EXPECT_THROW(apply_channel(ch, DensityOperator::pure(ket(reg, {0, 0}))), RegisterError);
}

// ---------------------------------------------------------------------------
// Detection

TEST(DetectorPovm, ElementsResolveIdentity) {
  for (double eta : {0.0, 0.3, 0.7, 1.0}) {
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(7);
    for (int n = 0; n <= 6; ++n) sum += detector_povm(DetectorSpec(eta), n, 6);
    EXPECT_LT((sum - Eigen::VectorXd::Ones(7)).cwiseAbs().maxCoeff(), 1e-14) << eta;
  }
  EXPECT_EQ(detector_povm(DetectorSpec(0.5), 5, 3).norm(), 0.0);
}

// Alternative detector model: splitter of amplitude transmission sqrt(eta)
// into a vacuum ancilla, ideal photon counting on the signal, ancilla traced.
TEST(DetectorPovm, MatchesBeamSplitterPlusProjectiveModel) {
  const int cutoff = 4;
  const ModeRegister reg({"s", "anc"}, {cutoff, cutoff});
  const FockVector vac = FockVector::vacuum(ModeRegister::single("anc", cutoff));
  for (double eta : {0.3, 0.7, 1.0}) {
    const CMatrix u = ideal_bs_unitary(BeamSplitterSpec::transmissivity(eta), reg, "s", "anc");
    for (int m = 0; m <= cutoff; ++m) {
      const FockVector in = FockVector::basis(ModeRegister::single("s", cutoff), std::vector<int>{m});
      const FockVector mixed = apply_unitary(u, tensor(in, vac));
      for (int n = 0; n <= cutoff; ++n) {
        double p_projective = 0.0;
        for (std::size_t i = 0; i < reg.dim(); ++i) {
          if (reg.occupation(i, 0) == n) p_projective += std::norm(mixed.amplitudes()(static_cast<Eigen::Index>(i)));
        }
        const PostselectResult r = postselect(DensityOperator::pure(in), {{"s", DetectorSpec(eta), n}});
        EXPECT_NEAR(r.probability, p_projective, 1e-12) << "eta=" << eta << " m=" << m << " n=" << n;
      }
    }
  }
}

TEST(DetectorPovm, ConditionalStateMatchesBeamSplitterModel) {
  const int cutoff = 4;
  std::mt19937_64 rng(99);
  const ModeRegister joint({"x", "s"}, {1, cutoff});
  const FockVector psi = random_state(joint, rng);
  const ModeRegister big({"x", "s", "anc"}, {1, cutoff, cutoff});
  const FockVector vac = FockVector::vacuum(ModeRegister::single("anc", cutoff));
  for (double eta : {0.3, 0.7, 1.0}) {
    const CMatrix u = ideal_bs_unitary(BeamSplitterSpec::transmissivity(eta), big, "s", "anc");
    const FockVector mixed = apply_unitary(u, tensor(psi, vac));
    for (int n = 0; n <= cutoff; ++n) {
      // Project s onto |n>, keep (x, anc) and trace anc by hand.
      CMatrix rho_x = CMatrix::Zero(2, 2);
      for (int x1 = 0; x1 <= 1; ++x1) {
        for (int x2 = 0; x2 <= 1; ++x2) {
          for (int k = 0; k <= cutoff; ++k) {
            const Complex a1 = mixed.amplitude(std::vector<int>{x1, n, k});
            const Complex a2 = mixed.amplitude(std::vector<int>{x2, n, k});
            rho_x(x1, x2) += a1 * std::conj(a2);
          }
        }
      }
      const double p = rho_x.trace().real();
      const PostselectResult r = postselect(DensityOperator::pure(psi), {{"s", DetectorSpec(eta), n}});
      EXPECT_NEAR(r.probability, p, 1e-12);
      if (p > 1e-12) {
        ASSERT_FALSE(r.impossible());
        EXPECT_LT((r.state->matrix() - rho_x / p).cwiseAbs().maxCoeff(), 1e-12) << "eta=" << eta << " n=" << n;
      }
    }
  }
}

TEST(DetectorPovm, LossThenDetectionCombinesDampingAndEfficiency) {
  std::mt19937_64 rng(5150);
  const ModeRegister reg({"a", "b"}, {1, 1});
  for (double eta : {0.3, 0.7, 1.0}) {
    for (int k = 0; k < 5; ++k) {
      const BeamSplitterSpec spec =
          k == 0 ? BeamSplitterSpec::symmetric(0.02) : spec_from(oracles::random_physical_spec(rng));
      const DensityOperator out =
          apply_channel(lossy_bs_kraus(spec, "a", 1, "b", 1), DensityOperator::pure(ket(reg, {1, 0})));
      const PostselectResult none = postselect(out, {{"a", DetectorSpec(eta), 0}, {"b", DetectorSpec(eta), 0}});
      // A photon sent into port a leaves through the two ports with total
      // share |t|^2 + |r|^2 = 1 - Gamma.
      const double share = std::norm(spec.t()) + std::norm(spec.r());
      EXPECT_NEAR(none.probability, 1.0 - eta * share, 1e-12);
      if (k == 0) EXPECT_NEAR(none.probability, combined_damping(eta, spec.damping()), 1e-12);
    }
  }
}

TEST(Postselect, FullyMeasuredStateLeavesEmptyRemainder) {
  const ModeRegister reg({"b", "c"}, {1, 1});
  const PostselectResult r =
      postselect(DensityOperator::pure(ket(reg, {1, 0})), {{"b", DetectorSpec(1.0), 1}, {"c", DetectorSpec(1.0), 0}});
  EXPECT_NEAR(r.probability, 1.0, 1e-15);
  ASSERT_FALSE(r.impossible());
  EXPECT_EQ(r.state->reg().num_modes(), 0u);
  EXPECT_EQ(r.state->reg().dim(), 1u);
}

TEST(Postselect, ZeroProbabilityOutcomeIsImpossible) {
  const ModeRegister reg({"b", "c"}, {1, 1});
  const PostselectResult r = postselect(DensityOperator::pure(ket(reg, {0, 0})), {{"b", DetectorSpec(1.0), 1}});
  EXPECT_TRUE(r.impossible());
  EXPECT_EQ(r.probability, 0.0);
}

TEST(Postselect, RejectsRepeatedMode) {
  const ModeRegister reg({"b", "c"}, {1, 1});
  EXPECT_THROW(postselect(DensityOperator::pure(ket(reg, {0, 0})),
                          {{"b", DetectorSpec(1.0), 0}, {"b", DetectorSpec(1.0), 0}}),
               RegisterError);
}
