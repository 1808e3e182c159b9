// Copyright 2026 The thermoflow Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thermoflow/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thermoflow/analysis.hpp"
#include "thermoflow/config.hpp"
#include "thermoflow/errors.hpp"
#include "thermoflow/flow.hpp"

namespace thermoflow::cli {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

constexpr double kRatioThreshold = 1.0 - 1e-8;

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Rows of numbers written as RFC-4180 CSV with a header line.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(const std::vector<double>& row) { rows_.push_back(row); }

  void write(const fs::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (std::size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
    out << '\n';
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_real(row[i]);
      out << '\n';
    }
    if (!out) throw IoError("failed writing " + path.string());
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<double>> rows_;
};

void write_json(const fs::path& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

fs::path prepare_dir(const std::string& dir) {
  const fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

std::string output_dir(const std::optional<std::string>& flag, const std::string& fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv("THERMOFLOW_OUT"); env && *env) return env;
  return fallback;
}

Json real_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json state_json(const State& s) { return {{"T", s.T}, {"eta2", s.eta2}}; }

Json tool_json() { return {{"name", "thermoflow"}, {"version", kToolVersion}}; }

Json conventions_json() {
  return {{"delta_D", "D*(gamma2) - D*(gamma1)"},
          {"delta_A", "A(gamma1) - A(gamma2), A = -lambda^3 C(grad D*, grad D*, grad D*)"},
          {"delta_D_sign_note",
           "signed values are reported as computed; published sources disagree on the sign of "
           "delta_D for the same scenario, so no normalization is applied"}};
}

Trajectory relax(const ThermoSystem& system, const ScenarioConfig& cfg, const State& p0) {
  const RelaxSpec spec{p0, cfg.q, cfg.lambda, cfg.horizon, cfg.grid_points};
  return cfg.integrator == "rk4" ? relax_ode(system, spec) : relax_analytic(system, spec);
}

CsvTable series_table(const Trajectory& traj) {
  CsvTable table({"t", "T", "eta2", "D_star", "speed_sq", "cubic"});
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const State s = traj.samples[i].state();
    const SeriesRecord& r = traj.series[i];
    table.add({traj.samples[i].t, s.T, s.eta2, r.divergence, r.speed_sq, r.cubic});
  }
  return table;
}

void collect_warnings(const ThermoSystem& system, const Trajectory& traj, const char* label,
                      std::vector<std::string>& warnings) {
  const auto* quantum = dynamic_cast<const QuantumRigidGas*>(&system);
  if (!quantum) return;
  for (const auto& p : traj.samples) {
    if (quantum->near_degenerate(p.state())) {
      warnings.push_back(std::string(label) +
                         ": fermion fugacity exceeds 0.5; the asymmetry analysis assumes the "
                         "non-degenerate regime");
      return;
    }
  }
}

ConstraintLine partner_line(const ScenarioConfig& cfg) {
  const PartnerConfig& p = *cfg.partner;
  if (p.line == "constant-eta2") return constant_eta2_line(*p.value);
  if (p.line == "constant-T") return constant_temperature_line(*p.value);
  return ray_line(cfg.q, *p.through);
}

Json asymmetry_json(const ThermoSystem& system, const AsymmetryReport& r, const Trajectory& first,
                    const Trajectory& second) {
  Json j;
  j["faster"] = std::string(to_string(r.faster));
  j["t_star"] = real_or_null(r.t_star);
  j["delta_dd"] = real_or_null(r.delta_dd);
  j["cubic_gamma1"] = real_or_null(r.cubic_first);
  j["cubic_gamma2"] = real_or_null(r.cubic_second);
  j["delta_A"] = real_or_null(r.cubic_first - r.cubic_second);
  if (std::isfinite(r.t_star)) {
    j["delta_D_at_t_star"] =
        divergence_from_offset(system, second.dense(r.t_star).target, second.dense(r.t_star).offset) -
        divergence_from_offset(system, first.dense(r.t_star).target, first.dense(r.t_star).offset);
  } else {
    j["delta_D_at_t_star"] = nullptr;
  }
  Json matches = Json::array();
  for (const auto& m : r.matches) {
    matches.push_back({{"t", m.t},
                       {"cubic_gamma1", m.cubic_first},
                       {"cubic_gamma2", m.cubic_second},
                       {"delta_dd", m.delta_dd}});
  }
  j["speed_matches"] = matches;
  Json extrema = Json::array();
  for (const auto& e : r.extrema) {
    extrema.push_back({{"t_grid", e.t_grid},
                       {"t_parabolic", e.t_parabolic},
                       {"t_refined", e.t_refined},
                       {"value", e.value},
                       {"kind", e.maximum ? "maximum" : "minimum"}});
  }
  j["delta_D_extrema"] = extrema;
  j["coincidence_gap"] = r.coincidence_gap;
  return j;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const std::string& config_path, const ConfigOverrides& overrides,
                 std::ostream& out) {
  const ScenarioConfig cfg = load_config(config_path, overrides);
  const SystemPtr system = make_system(cfg);
  const fs::path dir = prepare_dir(output_dir(std::nullopt, cfg.output_dir));

  std::vector<std::string> warnings;
  const Trajectory first = relax(*system, cfg, cfg.initial);
  collect_warnings(*system, first, "gamma1", warnings);
  series_table(first).write(dir / "series.csv");

  Json report;
  report["command"] = "simulate";
  report["tool"] = tool_json();
  report["config"] = Json::parse(canonical_json(cfg));
  report["config_hash"] = config_hash(cfg);
  report["system"] = {{"kind", std::string(to_string(system->kind()))},
                      {"eta2", std::string(system->eta2_name())}};
  report["conventions"] = conventions_json();
  Json branches = Json::array();
  branches.push_back({{"label", "gamma1"},
                      {"p0", state_json(cfg.initial)},
                      {"series", "series.csv"},
                      {"initial_divergence", first.series.front().divergence},
                      {"final_divergence", first.series.back().divergence},
                      {"dissipated", first.dissipated.back()}});

  std::optional<State> second_start = cfg.second;
  if (cfg.partner) {
    const auto pair = solve_equidistant(
        *system, cfg.q, cfg.initial, partner_line(cfg),
        {cfg.partner->bracket[0], cfg.partner->bracket[1]});
    second_start = pair.solved;
    report["partner"] = {{"solved", state_json(pair.solved)},
                         {"parameter", pair.parameter},
                         {"divergence", pair.divergence_value}};
  }

  Json analysis = nullptr;
  if (second_start) {
    const Trajectory second = relax(*system, cfg, *second_start);
    collect_warnings(*system, second, "gamma2", warnings);
    series_table(second).write(dir / "series_2.csv");
    branches.push_back({{"label", "gamma2"},
                        {"p0", state_json(*second_start)},
                        {"series", "series_2.csv"},
                        {"initial_divergence", second.series.front().divergence},
                        {"final_divergence", second.series.back().divergence},
                        {"dissipated", second.dissipated.back()}});
    const double d1 = first.series.front().divergence;
    const double d2 = second.series.front().divergence;
    const double gap = std::abs(d1 - d2) / std::max(std::abs(d1), 1e-300);
    if (gap > 1e-3) {
      warnings.push_back("initial states are not equidistant (relative gap " + format_real(gap) +
                         "); the speed-match criterion assumes equal initial divergence");
    }
    analysis = asymmetry_json(*system, classify_asymmetry(*system, first, second), first, second);
    analysis["equidistance_rel_gap"] = gap;
  }
  report["branches"] = branches;
  report["asymmetry"] = analysis;
  report["warnings"] = warnings;
  write_json(dir / "report.json", report);
  out << (dir / "report.json").string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// audit

int cmd_audit(const std::string& config_path, const std::string& mode,
              const ConfigOverrides& overrides, std::ostream& out, std::ostream& err) {
  const ScenarioConfig cfg = load_config(config_path, overrides);
  const SystemPtr system = make_system(cfg);
  Json report;
  report["command"] = "audit";
  report["mode"] = mode;
  report["tool"] = tool_json();
  report["config"] = Json::parse(canonical_json(cfg));
  report["config_hash"] = config_hash(cfg);
  report["threshold"] = kRatioThreshold;

  int violations = 0;
  Json rows = Json::array();
  if (mode == "tur") {
    const Trajectory traj = relax(*system, cfg, cfg.initial);
    for (const auto& r : tur_audit(*system, traj, cfg.lambda, cfg.taus)) {
      if (!(r.ratio >= kRatioThreshold)) ++violations;
      rows.push_back({{"tau", r.tau}, {"delta_A", r.delta_a}, {"bound", r.bound}, {"ratio", r.ratio}});
    }
    report["initial_divergence"] = traj.series.front().divergence;
  } else if (mode == "horse-carrot") {
    if (!cfg.schedule) throw ConfigError(config_path + ": schedule: required for horse-carrot mode");
    const ScheduleConfig sched = *cfg.schedule;
    const double horizon = cfg.horizon;
    DrivenSpec spec{cfg.initial,
                    [sched, horizon](double t) {
                      const double u = t / horizon;
                      return State{sched.from.T + u * (sched.to.T - sched.from.T),
                                   sched.from.eta2 + u * (sched.to.eta2 - sched.from.eta2)};
                    },
                    [sched](double t) {
                      return sched.rate_base + sched.rate_amplitude * std::sin(sched.rate_omega * t);
                    },
                    cfg.horizon, cfg.grid_points};
    const HorseCarrotRow r = horse_carrot_audit(*system, driven_flow(*system, spec));
    if (!(r.ratio >= kRatioThreshold)) ++violations;
    rows.push_back({{"tau", r.tau},
                    {"delta_A", r.delta_a},
                    {"eps_bar", r.eps_bar},
                    {"length", r.length},
                    {"bound", r.bound},
                    {"ratio", r.ratio}});
  } else {
    throw UsageError("unknown audit mode '" + mode + "' (expected tur or horse-carrot)");
  }
  report["rows"] = rows;
  report["violations"] = violations;

  const fs::path dir = prepare_dir(output_dir(std::nullopt, cfg.output_dir));
  const fs::path path = dir / ("audit_" + mode + ".json");
  write_json(path, report);
  out << report.dump(2) << '\n';
  if (violations > 0) {
    err << "bound violated in " << violations << " row(s); see " << path.string() << '\n';
    return kBoundViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// tensor

State parse_at(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--at expects T,ETA2, got '" + text + "'");
  auto number = [&](std::string_view part) {
    double v = 0.0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size()) {
      throw UsageError("--at: '" + std::string(part) + "' is not a number");
    }
    return v;
  };
  const std::string_view all(text);
  return {number(all.substr(0, comma)), number(all.substr(comma + 1))};
}

int cmd_tensor(const std::string& config_path, const std::string& at,
               const ConfigOverrides& overrides, std::ostream& out) {
  const ScenarioConfig cfg = load_config(config_path, overrides);
  const SystemPtr system = make_system(cfg);
  const State s = parse_at(at);
  const SymTensor2 g = metric_eta(*system, s);
  const SymTensor3 c = amari_chentsov_eta(*system, s);
  Json j{{"system", std::string(to_string(system->kind()))},
         {"eta2", std::string(system->eta2_name())},
         {"state", state_json(s)},
         {"metric", {{"g_00", g(0, 0)}, {"g_01", g(0, 1)}, {"g_11", g(1, 1)}}},
         {"amari_chentsov",
          {{"C_000", c(0, 0, 0)}, {"C_001", c(0, 0, 1)}, {"C_011", c(0, 1, 1)}, {"C_111", c(1, 1, 1)}}}};
  out << j.dump(2) << '\n';
  return kOk;
}

// ---------------------------------------------------------------------------
// reproduce

struct FigureGrid {
  double horizon = 20.0;
  int grid_points = 10001;
};

CsvTable delta_table(const Trajectory& first, const Trajectory& second) {
  CsvTable t({"t", "D_star_1", "D_star_2", "delta_D"});
  for (std::size_t i = 0; i < first.samples.size(); ++i) {
    const double d1 = first.series[i].divergence;
    const double d2 = second.series[i].divergence;
    t.add({first.samples[i].t, d1, d2, d2 - d1});
  }
  return t;
}

// Shared by the isobaric and iso-μ panels: divergence along the line through
// q, an equidistant pair around q and the two relaxations.
Json reproduce_pair(const ThermoSystem& system, const State& q, double hot_T, Bracket cold_bracket,
                    double t_lo, double t_hi, const FigureGrid& grid, const fs::path& dir,
                    const std::string& prefix, const std::string& line_file) {
  CsvTable line({"T", "D_star"});
  const int n = 391;
  for (int i = 0; i < n; ++i) {
    const double T = t_lo + (t_hi - t_lo) * i / (n - 1);
    line.add({T, divergence(system, {T, q.eta2}, q)});
  }
  line.write(dir / line_file);

  const State hot{hot_T, q.eta2};
  const auto pair = solve_equidistant(system, q, hot, constant_eta2_line(q.eta2), cold_bracket);
  const RelaxSpec warm_spec{pair.cold, q, 1.0, grid.horizon, grid.grid_points};
  const RelaxSpec cool_spec{pair.hot, q, 1.0, grid.horizon, grid.grid_points};
  const Trajectory warming = relax_analytic(system, warm_spec);
  const Trajectory cooling = relax_analytic(system, cool_spec);
  delta_table(warming, cooling).write(dir / (prefix + "_delta.csv"));
  const AsymmetryReport r = classify_asymmetry(system, warming, cooling);

  Json j;
  j["q"] = state_json(q);
  j["gamma1"] = {{"role", "warming"}, {"p0", state_json(pair.cold)}};
  j["gamma2"] = {{"role", "cooling"}, {"p0", state_json(pair.hot)}};
  j["initial_divergence"] = pair.divergence_value;
  j["asymmetry"] = asymmetry_json(system, r, warming, cooling);
  j["files"] = {line_file, prefix + "_delta.csv"};
  j["horizon"] = grid.horizon;
  j["grid_points"] = grid.grid_points;
  return j;
}

int cmd_reproduce(const std::string& figure, const std::optional<std::string>& out_flag,
                  const FigureGrid& grid, std::ostream& out) {
  if (figure != "fig1" && figure != "fig2" && figure != "fig3") {
    throw UsageError("unknown figure '" + figure + "' (expected fig1, fig2 or fig3)");
  }
  const fs::path dir = prepare_dir(output_dir(out_flag, "thermoflow-out"));
  Json report;
  report["command"] = "reproduce";
  report["figure"] = figure;
  report["tool"] = tool_json();
  report["conventions"] = conventions_json();

  if (figure == "fig1") {
    const State q{1.0, -1.0};
    const ClassicalIdealGasTP gas(1.5, 1.0, q);
    report["units"] = "reduced";
    report["parameters"] = {{"system", "ideal-gas-tp"}, {"c", 1.5}, {"n0kb", 1.0}, {"lambda", 1.0}};
    report["panel"] = reproduce_pair(gas, q, 1.3, {0.05, 1.0}, 0.1, 2.0, grid, dir, "fig1",
                                     "fig1_isobar.csv");
  } else if (figure == "fig2") {
    const State q{1.0, -1.0};
    const QuantumRigidGas boson(Statistics::kBoson, 1.0, 0.5, 1.0, q);
    report["units"] = "reduced";
    report["parameters"] = {{"system", "boson-rigid"}, {"kappa", 1.0}, {"a", 0.5},
                            {"kB", 1.0},               {"mu", -1.0},   {"lambda", 1.0},
                            {"note", "default parameters"}};
    report["panel"] = reproduce_pair(boson, q, 1.3, {0.05, 1.0}, 0.05, 2.0, grid, dir, "fig2",
                                     "fig2_isomu.csv");
  } else {
    MpembaOptions options{grid.horizon, grid.grid_points};
    const MpembaResult m = mpemba_scenario(options);
    const ClassicalIdealGasTP gas(m.c, m.n0kb, m.q);
    const double l3 = m.lambda * m.lambda * m.lambda;

    CsvTable field({"T", "P", "A"});
    const int nt = 61;
    const int np = 61;
    for (int i = 0; i < nt; ++i) {
      for (int k = 0; k < np; ++k) {
        const double T = 250.0 + 150.0 * i / (nt - 1);
        const double P = 5e4 + 2e5 * k / (np - 1);
        field.add({T, P, cubic_potential(gas, {T, -P}, m.q, m.lambda)});
      }
    }
    field.write(dir / "fig3_potential.csv");

    CsvTable deltas({"t", "delta_D", "delta_speed_sq", "delta_A"});
    for (std::size_t i = 0; i < m.first.samples.size(); ++i) {
      const auto& a = m.first.series[i];
      const auto& b = m.second.series[i];
      deltas.add({m.first.samples[i].t, b.divergence - a.divergence,
                  (b.speed_sq - a.speed_sq) / (m.lambda * m.lambda), (a.cubic - b.cubic) / l3});
    }
    deltas.write(dir / "fig3_delta.csv");

    report["units"] = "si";
    report["parameters"] = {{"system", "ideal-gas-tp"}, {"c", m.c},         {"n0kb", m.n0kb},
                            {"lambda", m.lambda},       {"q", state_json(m.q)}};
    report["panel"] = {
        {"gamma1", {{"p0", state_json(m.p_first)}, {"initial_divergence", m.divergence_first}}},
        {"gamma2", {{"p0", state_json(m.p_second)}, {"initial_divergence", m.divergence_second}}},
        {"asymmetry", asymmetry_json(gas, m.report, m.first, m.second)},
        {"t_star_critical", real_or_null(m.t_star_critical)},
        {"delta_speed_sq_column", "(|gamma2'|^2 - |gamma1'|^2) / lambda^2"},
        {"delta_A_column", "(A(gamma1) - A(gamma2)) / lambda^3"},
        {"files", {"fig3_potential.csv", "fig3_delta.csv"}},
        {"horizon", grid.horizon},
        {"grid_points", grid.grid_points}};
  }
  const fs::path path = dir / (figure + "_report.json");
  write_json(path, report);
  out << path.string() << '\n';
  return kOk;
}

}  // namespace

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relaxation asymmetry toolkit for thermodynamic gradient flows", "thermoflow"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::optional<std::string> units;
  std::optional<int> grid;
  std::optional<double> horizon;
  app.add_option("--units", units, "Unit preset for config-driven commands")
      ->check(CLI::IsMember({"reduced", "si"}));
  app.add_option("--grid", grid, "Number of time samples")->check(CLI::Range(3, 100'000'000));
  app.add_option("--horizon", horizon, "Time horizon")->check(CLI::PositiveNumber);

  std::string config_path;
  std::string figure;
  std::string mode;
  std::string at;
  std::optional<std::string> out_dir;

  auto* simulate = app.add_subcommand("simulate", "Relax one or two initial states and classify");
  simulate->add_option("config", config_path, "Scenario file")->required();
  simulate->fallthrough();

  auto* reproduce = app.add_subcommand("reproduce", "Write the data behind a figure as CSV");
  reproduce->add_option("figure", figure, "fig1, fig2 or fig3")->required();
  reproduce->add_option("--out", out_dir, "Output directory");
  reproduce->fallthrough();

  auto* audit = app.add_subcommand("audit", "Check the speed-cost or Horse-Carrot bound");
  audit->add_option("config", config_path, "Scenario file")->required();
  audit->add_option("--mode", mode, "tur or horse-carrot")->required();
  audit->fallthrough();

  auto* tensor = app.add_subcommand("tensor", "Print metric and cubic tensor at a state");
  tensor->add_option("config", config_path, "Scenario file")->required();
  tensor->add_option("--at", at, "State as T,ETA2")->required();
  tensor->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  const ConfigOverrides overrides{units, grid, horizon};
  try {
    if (simulate->parsed()) return cmd_simulate(config_path, overrides, out);
    if (audit->parsed()) return cmd_audit(config_path, mode, overrides, out, err);
    if (tensor->parsed()) return cmd_tensor(config_path, at, overrides, out);
    FigureGrid fg;
    if (grid) fg.grid_points = *grid;
    if (horizon) fg.horizon = *horizon;
    return cmd_reproduce(figure, out_dir, fg, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const SingularMetricError& e) {
    err << "singular metric: " << e.what() << '\n';
    return kDomainFailure;
  } catch (const ResolutionError& e) {
    err << "resolution error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace thermoflow::cli
