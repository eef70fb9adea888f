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

#include "qscissors/apparatus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qscissors/errors.hpp"

namespace qscissors {

namespace {

const Complex kI(0.0, 1.0);

KrausChannel channel_for(ChannelCache* cache, const BeamSplitterSpec& spec, const std::string& a, int ca,
                         const std::string& b, int cb) {
  if (cache) return cache->get(spec, a, ca, b, cb);
  return lossy_bs_kraus(spec, a, ca, b, cb);
}

DensityOperator single_photon_pair(const std::string& a, const std::string& b, int cutoff_a, int cutoff_b) {
  ModeRegister reg({a, b}, {cutoff_a, cutoff_b});
  const std::array<int, 2> occ{1, 0};
  return DensityOperator::pure(FockVector::basis(std::move(reg), occ));
}

}  // namespace

QubitAmplitudes::QubitAmplitudes(Complex c0, Complex c1) : c0_(c0), c1_(c1) {
  const double n2 = std::norm(c0) + std::norm(c1);
  if (std::abs(n2 - 1.0) > 1e-12) {
    throw PhysicalityError("QubitAmplitudes: |c0|^2 + |c1|^2 = " + std::to_string(n2) + ", expected 1");
  }
}

FockVector QubitAmplitudes::on(std::string label, int cutoff) const {
  CVector amps = CVector::Zero(cutoff + 1);
  amps(0) = c0_;
  amps(1) = c1_;
  return FockVector(ModeRegister::single(std::move(label), cutoff), std::move(amps));
}

// ---------------------------------------------------------------------------
// Bell algebra

std::string_view bell_name(BellLabel label) {
  switch (label) {
    case BellLabel::kPsiPlus:
      return "Psi+";
    case BellLabel::kPsiMinus:
      return "Psi-";
    case BellLabel::kPhiPlus:
      return "Phi+";
    case BellLabel::kPhiMinus:
      return "Phi-";
  }
  return "?";
}

std::array<BellState, 4> bell_states(int cutoff) {
  const ModeRegister reg({"b", "c"}, {cutoff, cutoff});
  auto ket = [&](int nb, int nc) {
    const std::array<int, 2> occ{nb, nc};
    return static_cast<Eigen::Index>(reg.index_of(occ));
  };
  const double s = 1.0 / std::sqrt(2.0);
  auto make = [&](std::pair<int, int> first, std::pair<int, int> second, Complex phase) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(reg.dim()));
    v(ket(first.first, first.second)) = s;
    v(ket(second.first, second.second)) = phase * s;
    return FockVector(reg, v);
  };
  return {BellState{BellLabel::kPsiPlus, make({0, 1}, {1, 0}, kI)},
          BellState{BellLabel::kPsiMinus, make({0, 1}, {1, 0}, -kI)},
          BellState{BellLabel::kPhiPlus, make({0, 0}, {1, 1}, kI)},
          BellState{BellLabel::kPhiMinus, make({0, 0}, {1, 1}, -kI)}};
}

FockVector ideal_channel_state() {
  const ModeRegister reg({"a", "b"}, {1, 1});
  const std::array<int, 2> occ{1, 0};
  const CMatrix u = ideal_bs_unitary(BeamSplitterSpec::symmetric(), reg, "a", "b");
  return apply_unitary(u, FockVector::basis(reg, occ));
}

std::array<BellBranch, 4> bell_decompose(const QubitAmplitudes& input) {
  const FockVector joint = tensor(ideal_channel_state(), input.on("c"));  // (a, b, c)
  const ModeRegister& reg = joint.reg();
  const auto bells = bell_states(1);
  auto branch_for = [&](std::size_t k) {
    CVector projected = CVector::Zero(2);
    for (std::size_t i = 0; i < reg.dim(); ++i) {
      const auto occ = reg.occupations(i);
      const std::array<int, 2> bc{occ[1], occ[2]};
      const Complex bell_amp = bells[k].state.amplitude(bc);
      projected(occ[0]) += std::conj(bell_amp) * joint.amplitudes()(static_cast<Eigen::Index>(i));
    }
    FockVector branch(ModeRegister::single("a", 1), projected);
    const double weight = branch.norm2();
    return BellBranch{bells[k].label, std::move(branch), weight};
  };
  return {branch_for(0), branch_for(1), branch_for(2), branch_for(3)};
}

std::array<BellMapping, 4> bs_action_on_bell(const BeamSplitterSpec& spec) {
  if (!spec.lossless() || std::abs(std::abs(spec.t()) - std::abs(spec.r())) > 1e-12) {
    throw PhysicalityError("bs_action_on_bell: requires a lossless 50/50 splitter");
  }
  const auto bells = bell_states(2);
  const ModeRegister& reg = bells[0].state.reg();
  const CMatrix u = ideal_bs_unitary(spec, reg, "b", "c");
  const double s = 1.0 / std::sqrt(2.0);

  auto map_one = [&](std::size_t k) {
    FockVector image = apply_unitary(u, bells[k].state);
    BellMapping m{bells[k].label, image, std::sqrt(image.norm2()), std::nullopt, 0.0};

    Eigen::Index best = 0;
    image.amplitudes().cwiseAbs2().maxCoeff(&best);
    const double best_weight = std::norm(image.amplitudes()(best));
    if (best_weight >= 1.0 - 1e-12) {
      const auto occ = reg.occupations(static_cast<std::size_t>(best));
      m.click_pattern = std::array<int, 2>{occ[0], occ[1]};
    }
    if (bells[k].label == BellLabel::kPsiPlus || bells[k].label == BellLabel::kPsiMinus) {
      m.leakage = std::max(0.0, image.norm2() - best_weight);
    } else {
      const double sign = bells[k].label == BellLabel::kPhiPlus ? -1.0 : 1.0;
      CVector expected = CVector::Zero(static_cast<Eigen::Index>(reg.dim()));
      const std::array<int, 2> k00{0, 0}, k20{2, 0}, k02{0, 2};
      expected(static_cast<Eigen::Index>(reg.index_of(k00))) = s;
      expected(static_cast<Eigen::Index>(reg.index_of(k20))) = sign * 0.5;
      expected(static_cast<Eigen::Index>(reg.index_of(k02))) = sign * 0.5;
      m.leakage = std::max(0.0, image.norm2() - std::norm(expected.dot(image.amplitudes())));
    }
    return m;
  };
  return {map_one(0), map_one(1), map_one(2), map_one(3)};
}

// ---------------------------------------------------------------------------
// Cache

KrausChannel ChannelCache::get(const BeamSplitterSpec& spec, const std::string& mode_a, int cutoff_a,
                               const std::string& mode_b, int cutoff_b) {
  const Key key{spec.t().real(), spec.t().imag(), spec.r().real(), spec.r().imag(), cutoff_a, cutoff_b};
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second.relabeled(mode_a, mode_b);
  }
  KrausChannel built = lossy_bs_kraus(spec, mode_a, cutoff_a, mode_b, cutoff_b);
  std::lock_guard lock(mutex_);
  entries_.emplace(key, built);
  return built;
}

// ---------------------------------------------------------------------------
// Pipelines

FockVector scissors_target(const CoherentDrive& drive, std::string label, int cutoff) {
  const double c = std::sqrt(drive.norm_c2());
  return QubitAmplitudes(drive.gamma0() / c, drive.gamma1() / c).on(std::move(label), cutoff);
}

RunResult run_scissors(const ScissorsConfig& config, ChannelCache* cache) {
  if (config.output_cutoff < 1) throw CutoffError("run_scissors: output cutoff must be >= 1", 1);
  const int drive_cutoff = config.drive.resolved_cutoff();
  const int pair_cutoff = drive_cutoff + 1;

  DensityOperator cd = single_photon_pair("c", "d", config.output_cutoff, pair_cutoff);
  cd = apply_channel(channel_for(cache, config.bs1, "c", config.output_cutoff, "d", pair_cutoff), cd);

  const FockVector drive = coherent_amplitudes(config.drive, "e");
  const double kept = drive.norm2();
  const DensityOperator e = DensityOperator::pure(drive.embed(ModeRegister::single("e", pair_cutoff)));

  DensityOperator cde = tensor(cd, e);
  const double trace_before = cde.trace();
  cde = apply_channel(channel_for(cache, config.bs2, "d", pair_cutoff, "e", pair_cutoff), cde);
  const double trace_defect = std::abs(cde.trace() - trace_before) + std::abs(cd.trace() - 1.0);

  PostselectResult post = postselect(cde, {{"d", config.detectors[0], config.clicks[0]},
                                           {"e", config.detectors[1], config.clicks[1]}});
  if (post.impossible()) {
    throw ImpossibleOutcome("run_scissors: click pattern (" + std::to_string(config.clicks[0]) + ", " +
                            std::to_string(config.clicks[1]) + ") has zero probability");
  }
  FockVector target = scissors_target(config.drive, "c", config.output_cutoff);
  const double fid = fidelity(*post.state, target);
  return RunResult{std::move(*post.state), post.probability, fid, std::move(target),
                   RunDiagnostics{1.0 - kept, trace_defect}};
}

RunResult run_teleport(const TeleportConfig& config, ChannelCache* cache) {
  DensityOperator input = std::holds_alternative<QubitAmplitudes>(config.input)
                              ? DensityOperator::pure(std::get<QubitAmplitudes>(config.input).on("c"))
                              : std::get<DensityOperator>(config.input);
  if (input.reg().num_modes() != 1 || input.reg().label(0) != "c") {
    throw RegisterError("run_teleport: input must be a single-mode state on 'c'");
  }
  std::optional<FockVector> target = config.target;
  if (!target) {
    if (!std::holds_alternative<QubitAmplitudes>(config.input)) {
      throw Error("run_teleport: a target is required for density-operator input");
    }
    target = std::get<QubitAmplitudes>(config.input).on("a");
  }
  if (target->reg().num_modes() != 1 || target->reg().label(0) != "a") {
    throw RegisterError("run_teleport: target must live on mode 'a'");
  }

  const int input_cutoff = input.reg().cutoff(0);
  const int pair_cutoff = input_cutoff + 1;

  DensityOperator ab = single_photon_pair("a", "b", 1, pair_cutoff);
  ab = apply_channel(channel_for(cache, config.bs1, "a", 1, "b", pair_cutoff), ab);

  DensityOperator abc = tensor(ab, input.embed(ModeRegister::single("c", pair_cutoff)));
  const double trace_before = abc.trace();
  abc = apply_channel(channel_for(cache, config.bs2, "b", pair_cutoff, "c", pair_cutoff), abc);
  const double trace_defect = std::abs(abc.trace() - trace_before) + std::abs(ab.trace() - 1.0);

  PostselectResult post = postselect(abc, {{"b", config.detectors[0], config.clicks[0]},
                                           {"c", config.detectors[1], config.clicks[1]}});
  if (post.impossible()) {
    throw ImpossibleOutcome("run_teleport: click pattern (" + std::to_string(config.clicks[0]) + ", " +
                            std::to_string(config.clicks[1]) + ") has zero probability");
  }
  FockVector tgt = *target;
  const double fid = fidelity(*post.state, tgt);
  return RunResult{std::move(*post.state), post.probability, fid, std::move(tgt),
                   RunDiagnostics{0.0, trace_defect}};
}

PipelineResult full_pipeline(const ScissorsConfig& scissors, const TeleportConfig& teleport, ChannelCache* cache) {
  RunResult prepared = run_scissors(scissors, cache);
  TeleportConfig stage = teleport;
  stage.input = prepared.state;
  stage.target = prepared.target.relabeled({"a"});
  RunResult sent = run_teleport(stage, cache);
  sent.diagnostics.truncation_error = prepared.diagnostics.truncation_error;
  const double end_to_end = sent.fidelity;
  return PipelineResult{std::move(prepared), std::move(sent), end_to_end};
}

}  // namespace qscissors
