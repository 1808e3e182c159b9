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

#ifndef THERMOFLOW_GEOMETRY_HPP
#define THERMOFLOW_GEOMETRY_HPP

#include <vector>

#include "thermoflow/systems.hpp"
#include "thermoflow/tensor.hpp"

namespace thermoflow {

/// A tangent vector in the η-coordinate basis, attached to its base state.
struct TangentVec {
  State base;
  Vec2 components{};
};

struct CurveSample {
  double t = 0.0;
  State state;
};

/// Time-ordered samples of a curve on the state manifold.
class Curve {
 public:
  /// Throws DomainError for fewer than two samples or non-increasing times.
  explicit Curve(std::vector<CurveSample> samples);

  const std::vector<CurveSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<CurveSample> samples_;
};

/// Metric inversion is refused above this condition number.
inline constexpr double kMaxConditionNumber = 1e12;

struct LengthSettings {
  /// Largest allowed chart step per segment, relative to max(1, |η_i|).
  double max_segment = 0.05;
};

/// Riemannian gradient of D*_q at `state`. In the η basis the components
/// are η(state) − η(q). Throws SingularMetricError for near-degenerate
/// metrics.
TangentVec grad_divergence(const ThermoSystem& system, const State& state, const State& q);

/// g(v, v) at the vector's base state.
double norm_sq(const ThermoSystem& system, const TangentVec& v);

/// C(v, v, v) = Σ C^{ijk} v_i v_j v_k at the vector's base state.
double cubic_form(const ThermoSystem& system, const TangentVec& v);

/// Σ over segments of sqrt(g_mid(Δη, Δη)) with the metric at the chart
/// midpoint. Throws ResolutionError if a segment exceeds the step bound.
double curve_length(const ThermoSystem& system, const Curve& curve,
                    const LengthSettings& settings = {});

/// Throws ResolutionError if a → b is longer than the chart step bound.
void check_segment(const State& a, const State& b, const LengthSettings& settings = {});

}  // namespace thermoflow

#endif  // THERMOFLOW_GEOMETRY_HPP
