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

#include "thermoflow/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "thermoflow/errors.hpp"

namespace thermoflow {

Curve::Curve(std::vector<CurveSample> samples) : samples_(std::move(samples)) {
  if (samples_.size() < 2) throw DomainError("curve needs at least two samples");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t)) {
      throw DomainError("curve times must be strictly increasing");
    }
  }
}

TangentVec grad_divergence(const ThermoSystem& system, const State& state, const State& q) {
  system.validate(state);
  system.validate(q);
  const double cond = system.metric(state).condition_number();
  if (!(cond <= kMaxConditionNumber)) {
    std::ostringstream msg;
    msg << "metric condition number " << cond << " exceeds " << kMaxConditionNumber
        << " at T=" << state.T;
    throw SingularMetricError(msg.str());
  }
  return {state, state.eta() - q.eta()};
}

double norm_sq(const ThermoSystem& system, const TangentVec& v) {
  return metric_eta(system, v.base).quadratic(v.components);
}

double cubic_form(const ThermoSystem& system, const TangentVec& v) {
  return amari_chentsov_eta(system, v.base).cubic(v.components);
}

void check_segment(const State& a, const State& b, const LengthSettings& settings) {
  const Vec2 ea = a.eta();
  const Vec2 eb = b.eta();
  for (int i = 0; i < 2; ++i) {
    const double scale = std::max({1.0, std::abs(ea[i]), std::abs(eb[i])});
    if (std::abs(eb[i] - ea[i]) > settings.max_segment * scale) {
      std::ostringstream msg;
      msg << "segment step " << std::abs(eb[i] - ea[i]) << " in coordinate " << i
          << " exceeds bound " << settings.max_segment * scale;
      throw ResolutionError(msg.str());
    }
  }
}

double curve_length(const ThermoSystem& system, const Curve& curve,
                    const LengthSettings& settings) {
  const auto& s = curve.samples();
  for (const auto& sample : s) system.validate(sample.state);
  double length = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    check_segment(s[i - 1].state, s[i].state, settings);
    const Vec2 delta = s[i].state.eta() - s[i - 1].state.eta();
    const State mid = State::from_eta(0.5 * (s[i].state.eta() + s[i - 1].state.eta()));
    length += std::sqrt(system.metric(mid).quadratic(delta));
  }
  return length;
}

}  // namespace thermoflow
