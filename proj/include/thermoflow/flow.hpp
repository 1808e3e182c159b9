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

#ifndef THERMOFLOW_FLOW_HPP
#define THERMOFLOW_FLOW_HPP

#include <functional>
#include <vector>

#include "thermoflow/geometry.hpp"
#include "thermoflow/systems.hpp"

namespace thermoflow {

/// Undriven relaxation γ̇ = −λ grad D*_q from p0 towards q.
struct RelaxSpec {
  State p0;
  State q;
  double lambda = 1.0;
  double horizon = 20.0;
  int grid_points = 10001;  ///< number of samples, step = horizon / (grid_points − 1)

  void validate() const;
  double step() const { return horizon / (grid_points - 1); }
};

/// Relaxation towards a moving target q(t) with a time-dependent rate λ(t).
struct DrivenSpec {
  State p0;
  std::function<State(double)> target_path;
  std::function<double(double)> rate_path;
  double horizon = 10.0;
  int grid_points = 10001;

  void validate() const;
  double step() const { return horizon / (grid_points - 1); }
};

/// One point of a flow. The state is kept as target + offset so that late
/// samples retain relative precision in η − η_q.
struct FlowPoint {
  double t = 0.0;
  State target;
  Vec2 offset{};
  Vec2 velocity{};  ///< γ̇ in the η basis
  double rate = 0.0;

  State state() const { return {target.T + offset[0], target.eta2 + offset[1]}; }
};

/// Per-sample derived quantities.
struct SeriesRecord {
  double divergence = 0.0;  ///< D*_{q(t)}(γ(t))
  double speed_sq = 0.0;    ///< ||γ̇||²
  double cubic = 0.0;       ///< C(γ̇, γ̇, γ̇)
};

struct Trajectory {
  std::vector<FlowPoint> samples;
  /// One point at the centre of each grid cell; quadrature nodes.
  std::vector<FlowPoint> midpoints;
  std::vector<SeriesRecord> series;
  /// Cumulative midpoint-rule integrals from t = 0 to each sample:
  /// ∫ λ⁻¹||γ̇||² dt (dissipated availability), ∫ ||γ̇||² dt and ∫ ||γ̇|| dt.
  std::vector<double> dissipated;
  std::vector<double> speed_sq_integral;
  std::vector<double> length;
  bool driven = false;
  /// Evaluates the flow at any t in [0, horizon]: exact for the analytic
  /// solution, cubic Hermite between samples otherwise.
  std::function<FlowPoint(double)> dense;

  double horizon() const { return samples.back().t; }
  Curve curve() const;
};

/// η(t) = η_q + (η₀ − η_q) e^{−λt} sampled on the grid, series filled in.
Trajectory relax_analytic(const ThermoSystem& system, const RelaxSpec& spec);

/// Classical RK4 on θ̇ = −λ g(η(θ)) (η(θ) − η_q) in the θ chart, with
/// η(θ) recovered by Newton inversion of the Legendre map. Throws
/// StepError if a step leaves the chart.
Trajectory relax_ode(const ThermoSystem& system, const RelaxSpec& spec);

/// RK4 on η̇ = −λ(t) (η − η(q(t))) in the η chart.
Trajectory driven_flow(const ThermoSystem& system, const DrivenSpec& spec);

/// max over interior samples and components of |η̈ + λη̇| / (|λη̇| + 1e-12),
/// by central differences. Throws ResolutionError for fewer than 3 samples.
double pregeodesic_residual(const Trajectory& trajectory, double lambda);

}  // namespace thermoflow

#endif  // THERMOFLOW_FLOW_HPP
