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

// Run configuration, sweep execution and tabular reports.

#ifndef QSCISSORS_REPORT_HPP
#define QSCISSORS_REPORT_HPP

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "qscissors/apparatus.hpp"

namespace qscissors {

/// Per-stage element overrides from the "elements" block.
struct StageElements {
  std::optional<BeamSplitterSpec> bs1;
  std::optional<BeamSplitterSpec> bs2;
  /// Detector pair; each entry may also fix that detector's click count.
  std::array<std::optional<DetectorSpec>, 2> detectors;
  std::array<std::optional<int>, 2> clicks;
};

struct SweepGrid {
  std::vector<double> eta;
  std::vector<double> damping;
  /// Drive amplitudes |gamma|, or vacuum/one-photon ratios when `by_ratio`.
  std::vector<double> drive;
  bool by_ratio = false;
  std::optional<int> cutoff;
  double tail_eps = 1e-12;

  static SweepGrid default_grid();
  std::size_t size() const noexcept { return eta.size() * damping.size() * drive.size(); }
};

struct RunConfig {
  double eta = 1.0;
  double damping = 0.0;
  CoherentDrive drive;
  std::optional<QubitAmplitudes> input;
  std::optional<std::array<int, 2>> clicks;
  std::optional<SweepGrid> sweep;
  std::optional<std::string> out;
  StageElements scissors_elements;
  StageElements teleport_elements;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

/// Applies (eta, damping, drive) and the element overrides. `clicks`, when
/// set, replaces the stage's click pattern. The teleport input defaults to
/// the ideal truncated drive (gamma_0|0> + gamma_1|1>)/C.
ScissorsConfig make_scissors_config(const RunConfig& config, double eta, double damping,
                                    const CoherentDrive& drive,
                                    const std::optional<std::array<int, 2>>& clicks = std::nullopt);
TeleportConfig make_teleport_config(const RunConfig& config, double eta, double damping,
                                    const CoherentDrive& drive,
                                    const std::optional<std::array<int, 2>>& clicks = std::nullopt);

struct ReportRow {
  double eta = 0.0;
  double gamma = 0.0;
  double ratio_R = 0.0;
  double drive_gamma = 0.0;
  double fid_scissors_numeric = 0.0;
  double fid_scissors_eq16 = 0.0;
  double fid_teleport_numeric = 0.0;
  double fid_teleport_eq20 = 0.0;
  double prob_scissors = 0.0;
  double prob_teleport = 0.0;
  double norm_eq15 = 0.0;
  double norm_eq180 = 0.0;
  double abs_diff_16 = 0.0;
  double abs_diff_20 = 0.0;
  bool oracle_out_of_range_16 = false;
  bool oracle_out_of_range_20 = false;
  double truncation_error = 0.0;
  bool impossible_outcome = false;
  bool invariant_violation = false;
  /// Not emitted; explains a failed point on stderr.
  std::string note;
};

/// Full pipeline at one grid point with oracle comparison. Never throws for
/// per-point failures; they are flagged in the row.
ReportRow evaluate_point(const RunConfig& config, double eta, double damping, const CoherentDrive& drive,
                         ChannelCache* cache = nullptr);

/// Rows in lexicographic (eta, damping, drive) order.
std::vector<ReportRow> run_sweep(const RunConfig& config, const SweepGrid& grid, unsigned threads = 0);

/// Single-stage row for the `scissors` and `teleport` commands.
struct StageRow {
  std::string stage;
  double eta = 0.0;
  double gamma = 0.0;
  double ratio_R = 0.0;
  double drive_gamma = 0.0;
  int click_first = 0;
  int click_second = 0;
  double fidelity = 0.0;
  double probability = 0.0;
  double truncation_error = 0.0;
  double trace_defect = 0.0;
  bool invariant_violation = false;
};

StageRow stage_row(std::string stage, double eta, double damping, const CoherentDrive& drive,
                   const std::array<int, 2>& clicks, const RunResult& result);

/// "%.12g", with negative zero printed as 0.
std::string format_number(double x);

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
void write_csv(std::ostream& os, const std::vector<StageRow>& rows);
std::string to_json(const std::vector<ReportRow>& rows);
std::string to_json(const std::vector<StageRow>& rows);

const std::vector<std::string>& report_columns();

}  // namespace qscissors

#endif  // QSCISSORS_REPORT_HPP
