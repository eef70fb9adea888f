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

#include "qscissors/report.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qscissors/analytic.hpp"
#include "qscissors/errors.hpp"

namespace qscissors {

namespace {

using nlohmann::json;

constexpr double kTraceDefectLimit = 1e-9;

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
  }
}

const json& require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  return j;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "must be finite");
  return x;
}

int integer(const json& j, const std::string& path, int min_value) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto x = j.get<long long>();
  if (x < min_value || x > 1'000'000) throw ConfigError(path, "out of range");
  return static_cast<int>(x);
}

Complex complex_value(const json& j, const std::string& path) {
  if (j.is_number()) return {number(j, path), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
  throw ConfigError(path, "expected a number or [re, im]");
}

double eta_value(const json& j, const std::string& path) {
  const double x = number(j, path);
  if (x < 0.0 || x > 1.0) throw ConfigError(path, "detector efficiency must lie in [0, 1]");
  return x;
}

double damping_value(const json& j, const std::string& path) {
  const double x = number(j, path);
  if (x < 0.0 || x >= 1.0) throw ConfigError(path, "damping must lie in [0, 1)");
  return x;
}

double drive_value(const json& j, const std::string& path) {
  const double x = number(j, path);
  if (x <= 0.0) throw ConfigError(path, "drive amplitude must be positive");
  return x;
}

double ratio_value(const json& j, const std::string& path) {
  const double x = number(j, path);
  if (x <= 0.0) throw ConfigError(path, "ratio must be positive");
  return x;
}

int cutoff_value(const json& j, const std::string& path) { return integer(j, path, 1); }

double tail_value(const json& j, const std::string& path) {
  const double x = number(j, path);
  if (!(x > 0.0 && x < 1.0)) throw ConfigError(path, "tail_eps must lie in (0, 1)");
  return x;
}

std::array<int, 2> clicks_value(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(path, "expected [int, int]");
  return {integer(j[0], path + "[0]", 0), integer(j[1], path + "[1]", 0)};
}

std::vector<double> list_value(const json& j, const std::string& path, double (*item)(const json&, const std::string&)) {
  if (!j.is_array()) throw ConfigError(path, "expected a list");
  if (j.empty()) throw ConfigError(path, "list must not be empty");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(item(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

BeamSplitterSpec bs_value(const json& j, const std::string& path) {
  require_object(j, path);
  if (!j.contains("type") || j["type"] != "bs") throw ConfigError(path + ".type", "expected \"bs\"");
  reject_unknown(j, path, {"type", "t", "r"});
  if (!j.contains("t")) throw ConfigError(path + ".t", "missing");
  if (!j.contains("r")) throw ConfigError(path + ".r", "missing");
  try {
    return BeamSplitterSpec(complex_value(j["t"], path + ".t"), complex_value(j["r"], path + ".r"));
  } catch (const PhysicalityError& e) {
    throw ConfigError(path, e.what());
  }
}

void detector_value(const json& j, const std::string& path, StageElements& stage, std::size_t slot) {
  require_object(j, path);
  if (!j.contains("type") || j["type"] != "detector") throw ConfigError(path + ".type", "expected \"detector\"");
  reject_unknown(j, path, {"type", "eta", "clicks"});
  if (!j.contains("eta")) throw ConfigError(path + ".eta", "missing");
  stage.detectors[slot] = DetectorSpec(eta_value(j["eta"], path + ".eta"));
  if (j.contains("clicks")) stage.clicks[slot] = integer(j["clicks"], path + ".clicks", 0);
}

StageElements stage_value(const json& j, const std::string& path) {
  require_object(j, path);
  reject_unknown(j, path, {"bs1", "bs2", "detectors"});
  StageElements stage;
  if (j.contains("bs1")) stage.bs1 = bs_value(j["bs1"], path + ".bs1");
  if (j.contains("bs2")) stage.bs2 = bs_value(j["bs2"], path + ".bs2");
  if (j.contains("detectors")) {
    const json& d = j["detectors"];
    if (!d.is_array() || d.size() != 2) throw ConfigError(path + ".detectors", "expected two detector elements");
    detector_value(d[0], path + ".detectors[0]", stage, 0);
    detector_value(d[1], path + ".detectors[1]", stage, 1);
  }
  return stage;
}

void drive_object(const json& j, CoherentDrive& drive) {
  if (j.is_number()) {
    drive.gamma = drive_value(j, "drive");
    return;
  }
  require_object(j, "drive");
  reject_unknown(j, "drive", {"gamma", "cutoff", "tail_eps"});
  if (j.contains("gamma")) {
    drive.gamma = complex_value(j["gamma"], "drive.gamma");
    if (std::abs(drive.gamma) == 0.0) throw ConfigError("drive.gamma", "drive amplitude must be nonzero");
  }
  if (j.contains("cutoff")) drive.cutoff = cutoff_value(j["cutoff"], "drive.cutoff");
  if (j.contains("tail_eps")) drive.tail_eps = tail_value(j["tail_eps"], "drive.tail_eps");
}

SweepGrid sweep_value(const json& j, const RunConfig& base) {
  require_object(j, "sweep");
  reject_unknown(j, "sweep", {"eta", "gamma_bs", "drive", "ratio", "cutoff", "tail_eps"});
  SweepGrid grid;
  grid.eta = j.contains("eta") ? list_value(j["eta"], "sweep.eta", eta_value) : std::vector<double>{base.eta};
  grid.damping = j.contains("gamma_bs") ? list_value(j["gamma_bs"], "sweep.gamma_bs", damping_value)
                                        : std::vector<double>{base.damping};
  if (j.contains("drive") && j.contains("ratio")) throw ConfigError("sweep.ratio", "conflicts with sweep.drive");
  if (j.contains("ratio")) {
    grid.drive = list_value(j["ratio"], "sweep.ratio", ratio_value);
    grid.by_ratio = true;
  } else if (j.contains("drive")) {
    grid.drive = list_value(j["drive"], "sweep.drive", drive_value);
  } else {
    grid.drive = {std::abs(base.drive.gamma)};
  }
  grid.cutoff = j.contains("cutoff") ? std::optional<int>(cutoff_value(j["cutoff"], "sweep.cutoff")) : base.drive.cutoff;
  grid.tail_eps = j.contains("tail_eps") ? tail_value(j["tail_eps"], "sweep.tail_eps") : base.drive.tail_eps;
  return grid;
}

CoherentDrive grid_drive(const SweepGrid& grid, double value) {
  CoherentDrive drive = grid.by_ratio ? CoherentDrive::from_ratio(value) : CoherentDrive{};
  if (!grid.by_ratio) drive.gamma = value;
  drive.cutoff = grid.cutoff;
  drive.tail_eps = grid.tail_eps;
  return drive;
}

bool in_unit_interval(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

void apply_stage(const StageElements& el, double eta, double damping, BeamSplitterSpec& bs1, BeamSplitterSpec& bs2,
                 std::array<DetectorSpec, 2>& detectors, std::array<int, 2>& clicks) {
  const BeamSplitterSpec homogeneous = BeamSplitterSpec::symmetric(damping);
  bs1 = el.bs1.value_or(homogeneous);
  bs2 = el.bs2.value_or(homogeneous);
  for (std::size_t k = 0; k < 2; ++k) {
    detectors[k] = el.detectors[k].value_or(DetectorSpec(eta));
    if (el.clicks[k]) clicks[k] = *el.clicks[k];
  }
}

void put_csv_line(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ',';
    os << cells[i];
  }
  os << '\n';
}

std::string flag(bool b) { return b ? "1" : "0"; }

std::vector<std::string> cells(const ReportRow& r) {
  return {format_number(r.eta),
          format_number(r.gamma),
          format_number(r.ratio_R),
          format_number(r.drive_gamma),
          format_number(r.fid_scissors_numeric),
          format_number(r.fid_scissors_eq16),
          format_number(r.fid_teleport_numeric),
          format_number(r.fid_teleport_eq20),
          format_number(r.prob_scissors),
          format_number(r.prob_teleport),
          format_number(r.norm_eq15),
          format_number(r.norm_eq180),
          format_number(r.abs_diff_16),
          format_number(r.abs_diff_20),
          flag(r.oracle_out_of_range_16),
          flag(r.oracle_out_of_range_20),
          format_number(r.truncation_error),
          flag(r.impossible_outcome),
          flag(r.invariant_violation)};
}

const std::vector<std::string>& stage_columns() {
  static const std::vector<std::string> cols{"stage",        "eta",          "gamma",       "ratio_R",
                                             "drive_gamma",  "click_first",  "click_second", "fidelity",
                                             "probability",  "truncation_error", "trace_defect",
                                             "invariant_violation"};
  return cols;
}

std::vector<std::string> cells(const StageRow& r) {
  return {r.stage,
          format_number(r.eta),
          format_number(r.gamma),
          format_number(r.ratio_R),
          format_number(r.drive_gamma),
          std::to_string(r.click_first),
          std::to_string(r.click_second),
          format_number(r.fidelity),
          format_number(r.probability),
          format_number(r.truncation_error),
          format_number(r.trace_defect),
          flag(r.invariant_violation)};
}

}  // namespace

// ---------------------------------------------------------------------------
// Config

SweepGrid SweepGrid::default_grid() {
  SweepGrid g;
  g.eta = {0.5, 0.7, 1.0};
  g.damping = {0.0, 0.02, 0.1};
  g.drive = {0.5, 1.0, 2.0};
  return g;
}

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  reject_unknown(root, "", {"eta", "gamma_bs", "drive", "ratio", "input", "clicks", "sweep", "out", "elements"});

  RunConfig cfg;
  if (root.contains("eta")) cfg.eta = eta_value(root["eta"], "eta");
  if (root.contains("gamma_bs")) cfg.damping = damping_value(root["gamma_bs"], "gamma_bs");
  if (root.contains("ratio") && root.contains("drive") &&
      (!root["drive"].is_object() || root["drive"].contains("gamma"))) {
    throw ConfigError("ratio", "conflicts with drive.gamma");
  }
  if (root.contains("drive")) drive_object(root["drive"], cfg.drive);
  if (root.contains("ratio")) cfg.drive.gamma = 1.0 / std::sqrt(ratio_value(root["ratio"], "ratio"));
  if (root.contains("input")) {
    const json& in = require_object(root["input"], "input");
    reject_unknown(in, "input", {"c0", "c1"});
    if (!in.contains("c0")) throw ConfigError("input.c0", "missing");
    if (!in.contains("c1")) throw ConfigError("input.c1", "missing");
    try {
      cfg.input = QubitAmplitudes(complex_value(in["c0"], "input.c0"), complex_value(in["c1"], "input.c1"));
    } catch (const PhysicalityError& e) {
      throw ConfigError("input", e.what());
    }
  }
  if (root.contains("clicks")) cfg.clicks = clicks_value(root["clicks"], "clicks");
  if (root.contains("out")) {
    if (!root["out"].is_string()) throw ConfigError("out", "expected a path string");
    cfg.out = root["out"].get<std::string>();
  }
  if (root.contains("elements")) {
    const json& el = require_object(root["elements"], "elements");
    reject_unknown(el, "elements", {"scissors", "teleport"});
    if (el.contains("scissors")) cfg.scissors_elements = stage_value(el["scissors"], "elements.scissors");
    if (el.contains("teleport")) cfg.teleport_elements = stage_value(el["teleport"], "elements.teleport");
  }
  if (root.contains("sweep")) cfg.sweep = sweep_value(root["sweep"], cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw ConfigError("", "config file " + path + " is empty");
  return parse_config(text);
}

ScissorsConfig make_scissors_config(const RunConfig& config, double eta, double damping, const CoherentDrive& drive,
                                    const std::optional<std::array<int, 2>>& clicks) {
  ScissorsConfig sc;
  sc.drive = drive;
  apply_stage(config.scissors_elements, eta, damping, sc.bs1, sc.bs2, sc.detectors, sc.clicks);
  if (clicks) sc.clicks = *clicks;
  return sc;
}

TeleportConfig make_teleport_config(const RunConfig& config, double eta, double damping, const CoherentDrive& drive,
                                    const std::optional<std::array<int, 2>>& clicks) {
  TeleportConfig tc;
  if (config.input) {
    tc.input = *config.input;
  } else {
    const double c = std::sqrt(drive.norm_c2());
    tc.input = QubitAmplitudes(drive.gamma0() / c, drive.gamma1() / c);
  }
  apply_stage(config.teleport_elements, eta, damping, tc.bs1, tc.bs2, tc.detectors, tc.clicks);
  if (clicks) tc.clicks = *clicks;
  return tc;
}

// ---------------------------------------------------------------------------
// Evaluation

ReportRow evaluate_point(const RunConfig& config, double eta, double damping, const CoherentDrive& drive,
                         ChannelCache* cache) {
  ReportRow row;
  row.eta = eta;
  row.gamma = damping;
  row.ratio_R = drive.ratio();
  row.drive_gamma = std::abs(drive.gamma);

  const ScissorsConfig sc = make_scissors_config(config, eta, damping, drive);
  const TeleportConfig tc = make_teleport_config(config, eta, damping, drive, config.clicks);

  const NoiseParams params = NoiseParams::from_drive(eta, damping, drive.gamma);
  auto oracle = [&](auto&& fn, double& value, bool* out_of_range) {
    try {
      const OracleReport rep = fn();
      value = rep.value;
      if (out_of_range) *out_of_range = rep.out_of_range;
    } catch (const Error& e) {
      value = 0.0;
      if (out_of_range) *out_of_range = true;
      row.note += std::string(e.what()) + "; ";
    }
  };
  oracle([&] { return truncation_fidelity(params); }, row.fid_scissors_eq16, &row.oracle_out_of_range_16);
  oracle([&] { return teleport_fidelity(params); }, row.fid_teleport_eq20, &row.oracle_out_of_range_20);
  oracle([&] { return truncation_norm(params, sc.bs2); }, row.norm_eq15, nullptr);
  oracle([&] { return teleport_norm(params); }, row.norm_eq180, nullptr);

  double trace_defect = 0.0;
  try {
    const PipelineResult p = full_pipeline(sc, tc, cache);
    row.fid_scissors_numeric = p.scissors.fidelity;
    row.fid_teleport_numeric = p.end_to_end_fidelity;
    row.prob_scissors = p.scissors.probability;
    row.prob_teleport = p.teleport.probability;
    row.truncation_error = p.scissors.diagnostics.truncation_error;
    trace_defect = std::max(p.scissors.diagnostics.trace_defect, p.teleport.diagnostics.trace_defect);
  } catch (const ImpossibleOutcome& e) {
    row.impossible_outcome = true;
    row.note += e.what();
  } catch (const Error& e) {
    row.invariant_violation = true;
    row.note += e.what();
  }

  row.abs_diff_16 = std::abs(row.fid_scissors_numeric - row.fid_scissors_eq16);
  row.abs_diff_20 = std::abs(row.fid_teleport_numeric - row.fid_teleport_eq20);

  const double finite_fields[] = {row.eta,         row.gamma,          row.ratio_R,       row.drive_gamma,
                                  row.fid_scissors_eq16, row.fid_teleport_eq20, row.norm_eq15, row.norm_eq180,
                                  row.abs_diff_16, row.abs_diff_20,    row.truncation_error};
  for (double x : finite_fields) {
    if (!std::isfinite(x)) row.invariant_violation = true;
  }
  for (double x : {row.fid_scissors_numeric, row.fid_teleport_numeric, row.prob_scissors, row.prob_teleport}) {
    if (!in_unit_interval(x)) row.invariant_violation = true;
  }
  if (trace_defect > kTraceDefectLimit) {
    row.invariant_violation = true;
    row.note += "trace defect " + format_number(trace_defect) + "; ";
  }
  return row;
}

std::vector<ReportRow> run_sweep(const RunConfig& config, const SweepGrid& grid, unsigned threads) {
  if (grid.eta.empty() || grid.damping.empty() || grid.drive.empty()) {
    throw ConfigError("sweep", "grid axes must not be empty");
  }
  struct Point {
    double eta, damping;
    CoherentDrive drive;
  };
  std::vector<Point> points;
  points.reserve(grid.size());
  for (double eta : grid.eta)
    for (double damping : grid.damping)
      for (double d : grid.drive) points.push_back({eta, damping, grid_drive(grid, d)});

  std::vector<ReportRow> rows(points.size());
  ChannelCache cache;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      rows[i] = evaluate_point(config, points[i].eta, points[i].damping, points[i].drive, &cache);
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, points.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return rows;
}

StageRow stage_row(std::string stage, double eta, double damping, const CoherentDrive& drive,
                   const std::array<int, 2>& clicks, const RunResult& result) {
  StageRow row;
  row.stage = std::move(stage);
  row.eta = eta;
  row.gamma = damping;
  row.ratio_R = drive.ratio();
  row.drive_gamma = std::abs(drive.gamma);
  row.click_first = clicks[0];
  row.click_second = clicks[1];
  row.fidelity = result.fidelity;
  row.probability = result.probability;
  row.truncation_error = result.diagnostics.truncation_error;
  row.trace_defect = result.diagnostics.trace_defect;
  row.invariant_violation = !in_unit_interval(row.fidelity) || !in_unit_interval(row.probability) ||
                            !std::isfinite(row.ratio_R) || !(row.trace_defect <= kTraceDefectLimit);
  return row;
}

// ---------------------------------------------------------------------------
// Output

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols{
      "eta",           "gamma",          "ratio_R",          "drive_gamma",           "fid_scissors_numeric",
      "fid_scissors_eq16", "fid_teleport_numeric", "fid_teleport_eq20", "prob_scissors", "prob_teleport",
      "norm_eq15",     "norm_eq180",     "abs_diff_16",      "abs_diff_20",           "oracle_out_of_range_16",
      "oracle_out_of_range_20", "truncation_error", "impossible_outcome", "invariant_violation"};
  return cols;
}

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
  put_csv_line(os, report_columns());
  for (const auto& r : rows) put_csv_line(os, cells(r));
}

void write_csv(std::ostream& os, const std::vector<StageRow>& rows) {
  put_csv_line(os, stage_columns());
  for (const auto& r : rows) put_csv_line(os, cells(r));
}

std::string to_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["eta"] = r.eta;
    o["gamma"] = r.gamma;
    o["ratio_R"] = r.ratio_R;
    o["drive_gamma"] = r.drive_gamma;
    o["fid_scissors_numeric"] = r.fid_scissors_numeric;
    o["fid_scissors_eq16"] = r.fid_scissors_eq16;
    o["fid_teleport_numeric"] = r.fid_teleport_numeric;
    o["fid_teleport_eq20"] = r.fid_teleport_eq20;
    o["prob_scissors"] = r.prob_scissors;
    o["prob_teleport"] = r.prob_teleport;
    o["norm_eq15"] = r.norm_eq15;
    o["norm_eq180"] = r.norm_eq180;
    o["abs_diff_16"] = r.abs_diff_16;
    o["abs_diff_20"] = r.abs_diff_20;
    o["oracle_out_of_range_16"] = r.oracle_out_of_range_16;
    o["oracle_out_of_range_20"] = r.oracle_out_of_range_20;
    o["truncation_error"] = r.truncation_error;
    o["impossible_outcome"] = r.impossible_outcome;
    o["invariant_violation"] = r.invariant_violation;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string to_json(const std::vector<StageRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json o;
    o["stage"] = r.stage;
    o["eta"] = r.eta;
    o["gamma"] = r.gamma;
    o["ratio_R"] = r.ratio_R;
    o["drive_gamma"] = r.drive_gamma;
    o["click_first"] = r.click_first;
    o["click_second"] = r.click_second;
    o["fidelity"] = r.fidelity;
    o["probability"] = r.probability;
    o["truncation_error"] = r.truncation_error;
    o["trace_defect"] = r.trace_defect;
    o["invariant_violation"] = r.invariant_violation;
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

}  // namespace qscissors
