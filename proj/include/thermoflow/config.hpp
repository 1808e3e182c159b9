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

#ifndef THERMOFLOW_CONFIG_HPP
#define THERMOFLOW_CONFIG_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thermoflow/errors.hpp"
#include "thermoflow/systems.hpp"

namespace thermoflow {

/// Malformed or inconsistent scenario file. The message carries the field
/// path and, when known, the line and column.
class ConfigError : public Error {
 public:
  using Error::Error;
};

inline constexpr double kBoltzmannSi = 1.380649e-23;

struct SystemConfig {
  SystemKind kind = SystemKind::kIdealGasTP;
  double c = 1.5;
  double kappa = 1.0;
  double a = 0.5;
  std::optional<double> prefactor;  ///< classical rigid gas; matched when absent
  std::array<double, 3> hessian{1.0, 0.0, 1.0};
};

struct UnitsConfig {
  std::string preset = "reduced";  ///< "reduced" or "si"
  double kb = 1.0;
  double n0kb = 1.0;
};

/// How to find the second initial state when it is not given explicitly.
struct PartnerConfig {
  std::string line = "constant-eta2";  ///< constant-eta2, constant-T or ray
  std::optional<double> value;         ///< fixed coordinate; defaults to the target's
  std::optional<State> through;        ///< ray direction
  std::array<double, 2> bracket{0.0, 0.0};
};

/// λ(t) = rate_base + rate_amplitude·sin(rate_omega·t) and a target moving
/// linearly in η from `from` to `to` over the horizon.
struct ScheduleConfig {
  State from;
  State to;
  double rate_base = 1.0;
  double rate_amplitude = 0.0;
  double rate_omega = 1.0;
};

struct ScenarioConfig {
  std::string name = "scenario";
  SystemConfig system;
  UnitsConfig units;
  State q;
  State initial;
  std::optional<State> second;
  std::optional<PartnerConfig> partner;
  double lambda = 1.0;
  std::optional<ScheduleConfig> schedule;
  double horizon = 20.0;
  int grid_points = 10001;
  std::string integrator = "analytic";  ///< analytic or rk4
  std::vector<double> taus;
  std::string output_dir = "thermoflow-out";
};

/// Command-line values that take precedence over the file.
struct ConfigOverrides {
  std::optional<std::string> units;
  std::optional<int> grid_points;
  std::optional<double> horizon;
};

/// Reads a YAML (or JSON) scenario file. Throws ConfigError for malformed
/// input and DomainError for states or parameters outside the chart.
ScenarioConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});
ScenarioConfig parse_config(const std::string& text, const ConfigOverrides& overrides = {});

/// Canonical JSON text of the fully resolved configuration; loading it back
/// yields the same configuration.
std::string canonical_json(const ScenarioConfig& config);

/// FNV-1a 64-bit hash of canonical_json, as 16 hex digits.
std::string config_hash(const ScenarioConfig& config);

SystemPtr make_system(const ScenarioConfig& config);

}  // namespace thermoflow

#endif  // THERMOFLOW_CONFIG_HPP
