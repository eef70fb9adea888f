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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qscissors/apparatus.hpp"
#include "qscissors/errors.hpp"
#include "qscissors/report.hpp"

namespace qscissors::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string config_json;
  std::optional<double> eta;
  std::optional<double> gamma;
  std::optional<double> drive;
  std::optional<double> ratio;
  std::optional<int> cutoff;
  std::vector<int> clicks;
  std::string out;
  std::string json_out;
  unsigned threads = 0;
};

void add_run_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--config-json", o.config_json, "inline JSON config");
  cmd->add_option("--eta", o.eta, "detector efficiency");
  cmd->add_option("--gamma", o.gamma, "beam-splitter damping constant");
  cmd->add_option("--drive", o.drive, "coherent drive amplitude |gamma|");
  cmd->add_option("--ratio", o.ratio, "vacuum/one-photon ratio R (sets the drive)");
  cmd->add_option("--cutoff", o.cutoff, "coherent drive photon cutoff");
  cmd->add_option("--clicks", o.clicks, "click pattern, two counts")->expected(2);
  cmd->add_option("--out", o.out, "CSV output path (default stdout)");
  cmd->add_option("--json-out", o.json_out, "JSON output path");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_root(const Options& o) {
  if (!o.config_path.empty() && !o.config_json.empty()) {
    throw ConfigError("", "--config and --config-json are mutually exclusive");
  }
  std::string text = "{}";
  if (!o.config_path.empty()) {
    text = read_text(o.config_path);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
      throw ConfigError("", "config file " + o.config_path + " is empty");
    }
  } else if (!o.config_json.empty()) {
    text = o.config_json;
  }
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
}

void set_drive_field(json& root, const char* key, const json& value) {
  if (!root.contains("drive") || !root["drive"].is_object()) {
    json d = json::object();
    if (root.contains("drive")) d["gamma"] = root["drive"];
    root["drive"] = d;
  }
  root["drive"][key] = value;
}

/// Overlays command-line flags onto the config document, so validation and
/// field paths stay in one place.
RunConfig resolve(const Options& o, bool sweep) {
  json root = parse_root(o);
  if (!root.is_object()) throw ConfigError("", "top level must be an object");
  if (sweep) {
    if (!root.contains("sweep")) {
      const SweepGrid g = SweepGrid::default_grid();
      root["sweep"] = {{"eta", g.eta}, {"gamma_bs", g.damping}, {"drive", g.drive}};
    }
    json& s = root["sweep"];
    if (s.is_object()) {
      if (o.eta) s["eta"] = json::array({*o.eta});
      if (o.gamma) s["gamma_bs"] = json::array({*o.gamma});
      if (o.drive) {
        s.erase("ratio");
        s["drive"] = json::array({*o.drive});
      }
      if (o.ratio) {
        s.erase("drive");
        s["ratio"] = json::array({*o.ratio});
      }
      if (o.cutoff) s["cutoff"] = *o.cutoff;
    }
  } else {
    if (o.eta) root["eta"] = *o.eta;
    if (o.gamma) root["gamma_bs"] = *o.gamma;
    if (o.drive) {
      root.erase("ratio");
      set_drive_field(root, "gamma", *o.drive);
    }
    if (o.ratio) {
      if (root.contains("drive") && root["drive"].is_object()) {
        root["drive"].erase("gamma");
      } else {
        root.erase("drive");
      }
      root["ratio"] = *o.ratio;
    }
    if (o.cutoff) set_drive_field(root, "cutoff", *o.cutoff);
  }
  if (!o.clicks.empty()) root["clicks"] = o.clicks;
  if (!o.out.empty()) root["out"] = o.out;
  return parse_config(root.dump());
}

void emit_text(const std::string& text, const std::optional<std::string>& path, std::ostream& out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw Error("cannot write " + *path);
  f << text;
}

template <typename Row>
void emit(const std::vector<Row>& rows, const RunConfig& cfg, const Options& o, std::ostream& out) {
  std::ostringstream csv;
  write_csv(csv, rows);
  emit_text(csv.str(), cfg.out, out);
  if (!o.json_out.empty()) emit_text(to_json(rows), o.json_out, out);
}

int run_scissors_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, false);
  const ScissorsConfig sc = make_scissors_config(cfg, cfg.eta, cfg.damping, cfg.drive, cfg.clicks);
  const RunResult r = run_scissors(sc);
  const StageRow row = stage_row("scissors", cfg.eta, cfg.damping, cfg.drive, sc.clicks, r);
  emit(std::vector<StageRow>{row}, cfg, o, out);
  if (row.invariant_violation) err << "invariant violation in scissors run\n";
  return row.invariant_violation ? kFailure : kOk;
}

int run_teleport_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, false);
  const TeleportConfig tc = make_teleport_config(cfg, cfg.eta, cfg.damping, cfg.drive, cfg.clicks);
  const RunResult r = run_teleport(tc);
  const StageRow row = stage_row("teleport", cfg.eta, cfg.damping, cfg.drive, tc.clicks, r);
  emit(std::vector<StageRow>{row}, cfg, o, out);
  if (row.invariant_violation) err << "invariant violation in teleport run\n";
  return row.invariant_violation ? kFailure : kOk;
}

int run_pipeline_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, false);
  const ReportRow row = evaluate_point(cfg, cfg.eta, cfg.damping, cfg.drive);
  emit(std::vector<ReportRow>{row}, cfg, o, out);
  if (!row.note.empty()) err << row.note << "\n";
  return row.invariant_violation || row.impossible_outcome ? kFailure : kOk;
}

int run_sweep_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  const RunConfig cfg = resolve(o, true);
  const std::vector<ReportRow> rows = run_sweep(cfg, *cfg.sweep, o.threads);
  emit(rows, cfg, o, out);
  bool violated = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].note.empty()) err << "row " << i << ": " << rows[i].note << "\n";
    violated = violated || rows[i].invariant_violation;
  }
  return violated ? kFailure : kOk;
}

std::string correction_name(const BellBranch& unit0, const BellBranch& unit1) {
  const Complex a = unit0.projected.amplitudes()(0);
  const Complex b = unit1.projected.amplitudes()(1);
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12) return "none";
  const Complex q = b / a;
  if (std::abs(q - 1.0) < 1e-12) return "identity";
  if (std::abs(q + 1.0) < 1e-12) return "sigma_z";
  return "phase";
}

int run_bell_check_cmd(const std::string& out_path, std::ostream& out, std::ostream& err) {
  const auto states = bell_states(1);
  double worst_overlap = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (std::size_t j = 0; j < states.size(); ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      worst_overlap = std::max(worst_overlap, std::abs(std::abs(states[i].state.inner(states[j].state)) - expect));
    }
  }
  const auto mapping = bs_action_on_bell(BeamSplitterSpec::symmetric());
  const auto on0 = bell_decompose(QubitAmplitudes(1.0, 0.0));
  const auto on1 = bell_decompose(QubitAmplitudes(0.0, 1.0));

  std::ostringstream table;
  table << "bell_state,click_b,click_c,norm,leakage,correction\n";
  bool ok = worst_overlap <= 1e-14;
  for (std::size_t k = 0; k < mapping.size(); ++k) {
    const BellMapping& m = mapping[k];
    table << bell_name(m.label) << ',';
    if (m.click_pattern) {
      table << (*m.click_pattern)[0] << ',' << (*m.click_pattern)[1];
    } else {
      table << "-,-";
    }
    table << ',' << format_number(m.norm) << ',' << format_number(m.leakage) << ','
          << (m.click_pattern ? correction_name(on0[k], on1[k]) : "-") << '\n';
    ok = ok && std::abs(m.norm - 1.0) <= 1e-12 && m.leakage <= 1e-12;
  }
  emit_text(table.str(), out_path.empty() ? std::nullopt : std::optional<std::string>(out_path), out);
  if (!ok) err << "Bell mapping check failed (orthonormality defect " << worst_overlap << ")\n";
  return ok ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Double quantum-scissors teleporter simulator"};
  app.require_subcommand(1);

  Options scissors_opts, teleport_opts, pipeline_opts, sweep_opts;
  std::string bell_out;
  auto* scissors = app.add_subcommand("scissors", "run the scissors stage once");
  add_run_options(scissors, scissors_opts);
  auto* teleport = app.add_subcommand("teleport", "run the teleport stage once");
  add_run_options(teleport, teleport_opts);
  auto* pipeline = app.add_subcommand("pipeline", "scissors then teleport, with oracle comparison");
  add_run_options(pipeline, pipeline_opts);
  auto* sweep = app.add_subcommand("sweep", "grid sweep over (eta, gamma, drive)");
  add_run_options(sweep, sweep_opts);
  sweep->add_option("--threads", sweep_opts.threads, "worker threads (0 = hardware)");
  auto* bell = app.add_subcommand("bell-check", "print the Bell-state click table");
  bell->add_option("--out", bell_out, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    if (scissors->parsed()) return run_scissors_cmd(scissors_opts, out, err);
    if (teleport->parsed()) return run_teleport_cmd(teleport_opts, out, err);
    if (pipeline->parsed()) return run_pipeline_cmd(pipeline_opts, out, err);
    if (sweep->parsed()) return run_sweep_cmd(sweep_opts, out, err);
    if (bell->parsed()) return run_bell_check_cmd(bell_out, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace qscissors::cli
