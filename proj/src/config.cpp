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

#include "thermoflow/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"

namespace thermoflow {

namespace {

using Json = nlohmann::json;

std::string where(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  if (mark.is_null()) return "";
  return " (line " + std::to_string(mark.line + 1) + ", column " + std::to_string(mark.column + 1) +
         ")";
}

[[noreturn]] void fail(const std::string& path, const YAML::Node& node, const std::string& what) {
  throw ConfigError(path + where(node) + ": " + what);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void require_map(const YAML::Node& node, const std::string& path,
                 std::initializer_list<const char*> allowed) {
  if (!node.IsMap()) fail(path.empty() ? "<root>" : path, node, "expected a mapping");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!keys.count(key)) fail(join(path, key), kv.first, "unknown field");
  }
}

double real_of(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, node, "expected a number");
  double value = 0.0;
  if (!YAML::convert<double>::decode(node, value) || !std::isfinite(value)) {
    fail(path, node, "'" + node.Scalar() + "' is not a finite real");
  }
  return value;
}

std::optional<double> optional_real(const YAML::Node& parent, const std::string& key,
                                    const std::string& path) {
  const YAML::Node node = parent[key];
  if (!node) return std::nullopt;
  return real_of(node, join(path, key));
}

double required_real(const YAML::Node& parent, const std::string& key, const std::string& path) {
  const YAML::Node node = parent[key];
  if (!node) fail(join(path, key), parent, "missing required field");
  return real_of(node, join(path, key));
}

std::string string_of(const YAML::Node& node, const std::string& path) {
  if (!node.IsScalar()) fail(path, node, "expected a string");
  return node.Scalar();
}

State state_of(const YAML::Node& node, const std::string& path) {
  require_map(node, path, {"T", "eta2", "P", "mu"});
  State s;
  s.T = required_real(node, "T", path);
  int given = 0;
  if (node["eta2"]) {
    s.eta2 = real_of(node["eta2"], join(path, "eta2"));
    ++given;
  }
  if (node["P"]) {
    s.eta2 = -real_of(node["P"], join(path, "P"));
    ++given;
  }
  if (node["mu"]) {
    s.eta2 = real_of(node["mu"], join(path, "mu"));
    ++given;
  }
  if (given != 1) fail(path, node, "give exactly one of eta2, P or mu");
  return s;
}

Json state_json(const State& s) { return {{"T", s.T}, {"eta2", s.eta2}}; }

ScenarioConfig from_yaml(const YAML::Node& root, const ConfigOverrides& overrides) {
  require_map(root, "", {"name", "system", "units", "q", "target", "initial", "second", "partner",
                         "lambda", "schedule", "horizon", "grid_points", "integrator", "taus",
                         "output"});
  ScenarioConfig cfg;
  if (root["name"]) cfg.name = string_of(root["name"], "name");

  const YAML::Node sys = root["system"];
  if (!sys) fail("system", root, "missing required field");
  require_map(sys, "system", {"kind", "c", "kappa", "a", "prefactor", "hessian"});
  if (!sys["kind"]) fail("system.kind", sys, "missing required field");
  const std::string kind = string_of(sys["kind"], "system.kind");
  const auto parsed = parse_system_kind(kind);
  if (!parsed) {
    fail("system.kind", sys["kind"],
         "unknown kind '" + kind +
             "' (expected ideal-gas-tp, boson-rigid, fermion-rigid, classical-rigid or "
             "toy-quadratic)");
  }
  cfg.system.kind = *parsed;
  if (auto v = optional_real(sys, "c", "system")) cfg.system.c = *v;
  if (auto v = optional_real(sys, "kappa", "system")) cfg.system.kappa = *v;
  if (auto v = optional_real(sys, "a", "system")) cfg.system.a = *v;
  if (auto v = optional_real(sys, "prefactor", "system")) cfg.system.prefactor = *v;
  if (const YAML::Node h = sys["hessian"]) {
    if (!h.IsSequence() || h.size() != 3) fail("system.hessian", h, "expected [a00, a01, a11]");
    for (std::size_t i = 0; i < 3; ++i) {
      cfg.system.hessian[i] = real_of(h[i], "system.hessian[" + std::to_string(i) + "]");
    }
  }

  std::optional<double> kb;
  std::optional<double> n0kb;
  if (const YAML::Node u = root["units"]) {
    require_map(u, "units", {"preset", "kB", "n0kb"});
    if (u["preset"]) cfg.units.preset = string_of(u["preset"], "units.preset");
    kb = optional_real(u, "kB", "units");
    n0kb = optional_real(u, "n0kb", "units");
  }
  if (overrides.units) cfg.units.preset = *overrides.units;
  if (cfg.units.preset != "reduced" && cfg.units.preset != "si") {
    fail("units.preset", root["units"], "expected 'reduced' or 'si', got '" + cfg.units.preset + "'");
  }
  cfg.units.kb = kb.value_or(cfg.units.preset == "si" ? kBoltzmannSi : 1.0);
  cfg.units.n0kb = n0kb.value_or(1.0);

  const char* target_key = root["q"] ? "q" : "target";
  if (!root[target_key]) fail("q", root, "missing required field");
  cfg.q = state_of(root[target_key], target_key);
  if (!root["initial"]) fail("initial", root, "missing required field");
  cfg.initial = state_of(root["initial"], "initial");
  if (root["second"]) cfg.second = state_of(root["second"], "second");

  if (const YAML::Node p = root["partner"]) {
    if (cfg.second) fail("partner", p, "give either second or partner, not both");
    require_map(p, "partner", {"line", "value", "through", "bracket"});
    PartnerConfig partner;
    if (p["line"]) partner.line = string_of(p["line"], "partner.line");
    if (partner.line != "constant-eta2" && partner.line != "constant-T" && partner.line != "ray") {
      fail("partner.line", p["line"], "expected constant-eta2, constant-T or ray");
    }
    partner.value = optional_real(p, "value", "partner");
    if (partner.line == "constant-eta2" && !partner.value) partner.value = cfg.q.eta2;
    if (partner.line == "constant-T" && !partner.value) partner.value = cfg.q.T;
    if (p["through"]) partner.through = state_of(p["through"], "partner.through");
    if (partner.line == "ray" && !partner.through) {
      fail("partner.through", p, "ray lines need a 'through' state");
    }
    const YAML::Node b = p["bracket"];
    if (!b) fail("partner.bracket", p, "missing required field");
    if (!b.IsSequence() || b.size() != 2) fail("partner.bracket", b, "expected [lo, hi]");
    partner.bracket = {real_of(b[0], "partner.bracket[0]"), real_of(b[1], "partner.bracket[1]")};
    cfg.partner = partner;
  }

  if (auto v = optional_real(root, "lambda", "")) cfg.lambda = *v;
  if (!(cfg.lambda > 0.0)) fail("lambda", root["lambda"], "must be > 0");

  if (const YAML::Node s = root["schedule"]) {
    require_map(s, "schedule", {"from", "to", "rate"});
    ScheduleConfig sched;
    if (!s["from"]) fail("schedule.from", s, "missing required field");
    if (!s["to"]) fail("schedule.to", s, "missing required field");
    sched.from = state_of(s["from"], "schedule.from");
    sched.to = state_of(s["to"], "schedule.to");
    if (const YAML::Node r = s["rate"]) {
      require_map(r, "schedule.rate", {"base", "amplitude", "omega"});
      if (auto v = optional_real(r, "base", "schedule.rate")) sched.rate_base = *v;
      if (auto v = optional_real(r, "amplitude", "schedule.rate")) sched.rate_amplitude = *v;
      if (auto v = optional_real(r, "omega", "schedule.rate")) sched.rate_omega = *v;
    } else {
      sched.rate_base = cfg.lambda;
    }
    if (!(sched.rate_base - std::abs(sched.rate_amplitude) > 0.0)) {
      fail("schedule.rate", s, "rate must stay positive (base > |amplitude|)");
    }
    cfg.schedule = sched;
  }

  if (auto v = optional_real(root, "horizon", "")) cfg.horizon = *v;
  if (overrides.horizon) cfg.horizon = *overrides.horizon;
  if (!(cfg.horizon > 0.0)) fail("horizon", root["horizon"], "must be > 0");

  if (const YAML::Node g = root["grid_points"]) {
    if (!g.IsScalar() || !YAML::convert<int>::decode(g, cfg.grid_points)) {
      fail("grid_points", g, "expected an integer");
    }
  }
  if (overrides.grid_points) cfg.grid_points = *overrides.grid_points;
  if (cfg.grid_points < 3) fail("grid_points", root["grid_points"], "must be >= 3");

  if (root["integrator"]) cfg.integrator = string_of(root["integrator"], "integrator");
  if (cfg.integrator != "analytic" && cfg.integrator != "rk4") {
    fail("integrator", root["integrator"], "expected 'analytic' or 'rk4'");
  }

  if (const YAML::Node t = root["taus"]) {
    if (!t.IsSequence() || t.size() == 0) fail("taus", t, "expected a non-empty list");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double tau = real_of(t[i], "taus[" + std::to_string(i) + "]");
      if (!(tau > 0.0)) fail("taus[" + std::to_string(i) + "]", t[i], "must be > 0");
      cfg.taus.push_back(tau);
    }
  } else {
    for (double k : {0.1, 1.0, 5.0, 20.0}) {
      const double tau = k / cfg.lambda;
      if (tau <= cfg.horizon * (1.0 + 1e-12)) cfg.taus.push_back(tau);
    }
    if (cfg.taus.empty()) cfg.taus.push_back(cfg.horizon);
  }

  if (const YAML::Node o = root["output"]) {
    require_map(o, "output", {"dir"});
    if (o["dir"]) cfg.output_dir = string_of(o["dir"], "output.dir");
  }
  return cfg;
}

ScenarioConfig checked(ScenarioConfig cfg) {
  // Well-formed files with states outside the chart raise DomainError,
  // prefixed with the offending field.
  SystemPtr system;
  try {
    system = make_system(cfg);
  } catch (const DomainError& e) {
    throw DomainError(std::string("system: ") + e.what());
  }
  auto check = [&](const State& s, const char* field) {
    try {
      system->validate(s);
    } catch (const DomainError& e) {
      throw DomainError(std::string(field) + ": " + e.what());
    }
  };
  check(cfg.q, "q");
  check(cfg.initial, "initial");
  if (cfg.second) check(*cfg.second, "second");
  if (cfg.schedule) {
    check(cfg.schedule->from, "schedule.from");
    check(cfg.schedule->to, "schedule.to");
  }
  return cfg;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const ConfigOverrides& overrides) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("parse error (line " + std::to_string(e.mark.line + 1) + ", column " +
                      std::to_string(e.mark.column + 1) + "): " + e.msg);
  }
  try {
    return checked(from_yaml(root, overrides));
  } catch (const YAML::Exception& e) {
    throw ConfigError("invalid structure (line " + std::to_string(e.mark.line + 1) + "): " + e.msg);
  }
}

ScenarioConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str(), overrides);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(path + ": " + e.what());
  }
}

std::string canonical_json(const ScenarioConfig& cfg) {
  Json sys{{"kind", std::string(to_string(cfg.system.kind))}};
  switch (cfg.system.kind) {
    case SystemKind::kIdealGasTP:
      sys["c"] = cfg.system.c;
      break;
    case SystemKind::kBosonRigid:
    case SystemKind::kFermionRigid:
      sys["kappa"] = cfg.system.kappa;
      sys["a"] = cfg.system.a;
      break;
    case SystemKind::kClassicalRigid:
      sys["c"] = cfg.system.c;
      sys["prefactor"] = cfg.system.prefactor.value_or(
          ClassicalRigidGas::matched_prefactor(cfg.system.kappa, cfg.system.a, cfg.units.kb));
      break;
    case SystemKind::kToyQuadratic:
      sys["hessian"] = cfg.system.hessian;
      break;
  }
  Json j{{"name", cfg.name},
         {"system", sys},
         {"units", {{"preset", cfg.units.preset}, {"kB", cfg.units.kb}, {"n0kb", cfg.units.n0kb}}},
         {"q", state_json(cfg.q)},
         {"initial", state_json(cfg.initial)},
         {"lambda", cfg.lambda},
         {"horizon", cfg.horizon},
         {"grid_points", cfg.grid_points},
         {"integrator", cfg.integrator},
         {"taus", cfg.taus}};
  if (cfg.second) j["second"] = state_json(*cfg.second);
  if (cfg.partner) {
    Json p{{"line", cfg.partner->line}, {"bracket", cfg.partner->bracket}};
    if (cfg.partner->value) p["value"] = *cfg.partner->value;
    if (cfg.partner->through) p["through"] = state_json(*cfg.partner->through);
    j["partner"] = p;
  }
  if (cfg.schedule) {
    j["schedule"] = {{"from", state_json(cfg.schedule->from)},
                     {"to", state_json(cfg.schedule->to)},
                     {"rate",
                      {{"base", cfg.schedule->rate_base},
                       {"amplitude", cfg.schedule->rate_amplitude},
                       {"omega", cfg.schedule->rate_omega}}}};
  }
  return j.dump();
}

std::string config_hash(const ScenarioConfig& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_json(config)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

SystemPtr make_system(const ScenarioConfig& cfg) {
  const SystemConfig& s = cfg.system;
  switch (s.kind) {
    case SystemKind::kIdealGasTP:
      return std::make_shared<ClassicalIdealGasTP>(s.c, cfg.units.n0kb, cfg.q);
    case SystemKind::kBosonRigid:
      return std::make_shared<QuantumRigidGas>(Statistics::kBoson, s.kappa, s.a, cfg.units.kb, cfg.q);
    case SystemKind::kFermionRigid:
      return std::make_shared<QuantumRigidGas>(Statistics::kFermion, s.kappa, s.a, cfg.units.kb,
                                               cfg.q);
    case SystemKind::kClassicalRigid:
      return std::make_shared<ClassicalRigidGas>(
          s.c, s.prefactor.value_or(ClassicalRigidGas::matched_prefactor(s.kappa, s.a, cfg.units.kb)),
          cfg.units.kb, cfg.q);
    case SystemKind::kToyQuadratic:
      return std::make_shared<ToyQuadratic>(SymTensor2(s.hessian[0], s.hessian[1], s.hessian[2]),
                                            cfg.q);
  }
  throw ConfigError("unsupported system kind");
}

}  // namespace thermoflow
