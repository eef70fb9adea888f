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

// End-to-end pipelines for the double quantum-scissors teleporter.
//
//   scissors:  |1>_c |0>_d -> BS1' (c, d) -> (x) |gamma>_e -> BS2' (d, e)
//              -> count (D_d, D_e) = (1, 0)            => state on c
//   teleport:  |1>_a |0>_b -> BS1 (a, b) -> (x) input_c -> BS2 (b, c)
//              -> count (D_b, D_c) = (1, 0)            => state on a
//
// Environment modes of lossy elements are traced out right after each
// element, so the live register never holds more than three modes.

#ifndef QSCISSORS_APPARATUS_HPP
#define QSCISSORS_APPARATUS_HPP

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "qscissors/channels.hpp"
#include "qscissors/fock_space.hpp"

namespace qscissors {

class QubitAmplitudes {
 public:
  /// Throws PhysicalityError unless |c0|^2 + |c1|^2 = 1 to 1e-12.
  QubitAmplitudes(Complex c0, Complex c1);

  Complex c0() const noexcept { return c0_; }
  Complex c1() const noexcept { return c1_; }
  /// c0|0> + c1|1> on a single mode truncated at `cutoff`.
  FockVector on(std::string label, int cutoff = 1) const;

 private:
  Complex c0_;
  Complex c1_;
};

// ---------------------------------------------------------------------------
// Bell-basis algebra on modes (b, c)

enum class BellLabel { kPsiPlus, kPsiMinus, kPhiPlus, kPhiMinus };

std::string_view bell_name(BellLabel label);

struct BellState {
  BellLabel label;
  FockVector state;
};

/// |Psi+-> = (|01> +- i|10>)/sqrt2, |Phi+-> = (|00> +- i|11>)/sqrt2 on (b, c).
std::array<BellState, 4> bell_states(int cutoff = 1);

/// Ideal entangled resource on (a, b): a single photon through a lossless
/// 50/50 splitter, (|10> + i|01>)/sqrt2.
FockVector ideal_channel_state();

struct BellBranch {
  BellLabel label;
  /// <Bell|_bc |input>_c |channel>_ab, unnormalized, on mode a.
  FockVector projected;
  double weight;
};

/// Projects the product of the channel and c0|0>+c1|1> onto each Bell state.
std::array<BellBranch, 4> bell_decompose(const QubitAmplitudes& input);

struct BellMapping {
  BellLabel label;
  /// U|Bell> on (b, c) with cutoff 2.
  FockVector output;
  double norm = 0.0;
  /// (n_b, n_c) of the single Fock ket carrying the state, if there is one.
  std::optional<std::array<int, 2>> click_pattern;
  /// Weight outside the expected image: the click ket for Psi states,
  /// (|00> -+ (|20> + |02>)/sqrt2)/sqrt2 for Phi+- states.
  double leakage = 0.0;
};

/// Action of an ideal symmetric splitter on the four Bell states.
std::array<BellMapping, 4> bs_action_on_bell(const BeamSplitterSpec& spec);

// ---------------------------------------------------------------------------
// Channel reuse across runs

/// Thread-safe memo of Kraus sets keyed by element and pair cutoffs.
class ChannelCache {
 public:
  KrausChannel get(const BeamSplitterSpec& spec, const std::string& mode_a, int cutoff_a,
                   const std::string& mode_b, int cutoff_b);

 private:
  using Key = std::tuple<double, double, double, double, int, int>;
  std::mutex mutex_;
  std::map<Key, KrausChannel> entries_;
};

// ---------------------------------------------------------------------------
// Pipelines

struct ScissorsConfig {
  CoherentDrive drive;
  BeamSplitterSpec bs1 = BeamSplitterSpec::symmetric();
  BeamSplitterSpec bs2 = BeamSplitterSpec::symmetric();
  /// (D_d, D_e); both share one efficiency unless overridden.
  std::array<DetectorSpec, 2> detectors{DetectorSpec(1.0), DetectorSpec(1.0)};
  std::array<int, 2> clicks{1, 0};
  /// Cutoff of the output mode c.
  int output_cutoff = 1;
};

struct TeleportConfig {
  /// State of mode c: a qubit or any density operator on a single mode "c".
  std::variant<QubitAmplitudes, DensityOperator> input = QubitAmplitudes(1.0, 0.0);
  /// Target on mode "a"; defaults to the input qubit.
  std::optional<FockVector> target;
  BeamSplitterSpec bs1 = BeamSplitterSpec::symmetric();
  BeamSplitterSpec bs2 = BeamSplitterSpec::symmetric();
  /// (D_b, D_c)
  std::array<DetectorSpec, 2> detectors{DetectorSpec(1.0), DetectorSpec(1.0)};
  std::array<int, 2> clicks{1, 0};
};

struct RunDiagnostics {
  /// Coherent-drive weight discarded by truncation.
  double truncation_error = 0.0;
  /// |trace after the lossy elements - trace before|
  double trace_defect = 0.0;
};

struct RunResult {
  DensityOperator state;
  double probability = 0.0;
  double fidelity = 0.0;
  FockVector target;
  RunDiagnostics diagnostics;
};

/// (gamma_0|0> + gamma_1|1>)/C on `label`.
FockVector scissors_target(const CoherentDrive& drive, std::string label = "c", int cutoff = 1);

/// Throws ImpossibleOutcome when the click pattern has zero probability.
RunResult run_scissors(const ScissorsConfig& config, ChannelCache* cache = nullptr);
RunResult run_teleport(const TeleportConfig& config, ChannelCache* cache = nullptr);

struct PipelineResult {
  RunResult scissors;
  RunResult teleport;
  double end_to_end_fidelity = 0.0;
};

/// Feeds the scissors output into the teleporter; the teleport input and
/// target are taken from the scissors stage.
PipelineResult full_pipeline(const ScissorsConfig& scissors, const TeleportConfig& teleport,
                             ChannelCache* cache = nullptr);

}  // namespace qscissors

#endif  // QSCISSORS_APPARATUS_HPP
