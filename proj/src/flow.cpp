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

#include "thermoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "thermoflow/errors.hpp"

namespace thermoflow {

namespace {

void require_grid(double horizon, int grid_points) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be > 0");
  if (grid_points < 2) throw DomainError("grid_points must be >= 2");
}

// Fills the per-sample series and the cumulative midpoint-rule integrals.
void fill_series(const ThermoSystem& system, Trajectory& traj) {
  const std::size_t n = traj.samples.size();
  traj.series.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const FlowPoint& p = traj.samples[i];
    const State x = p.state();
    system.validate(x);
    traj.series[i].divergence = divergence_from_offset(system, p.target, p.offset);
    traj.series[i].speed_sq = system.metric(x).quadratic(p.velocity);
    traj.series[i].cubic = system.amari_chentsov(x).cubic(p.velocity);
  }
  traj.dissipated.assign(n, 0.0);
  traj.speed_sq_integral.assign(n, 0.0);
  traj.length.assign(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const FlowPoint& m = traj.midpoints[i - 1];
    const double h = traj.samples[i].t - traj.samples[i - 1].t;
    const double speed_sq = system.metric(m.state()).quadratic(m.velocity);
    traj.speed_sq_integral[i] = traj.speed_sq_integral[i - 1] + h * speed_sq;
    traj.dissipated[i] = traj.dissipated[i - 1] + h * speed_sq / m.rate;
    traj.length[i] = traj.length[i - 1] + h * std::sqrt(speed_sq);
  }
}

struct HermiteNode {
  double t;
  Vec2 eta;
  Vec2 eta_dot;
};

// Cubic Hermite interpolation of η on a uniform grid; the target and rate
// are re-evaluated at t so the velocity comes from the vector field.
std::function<FlowPoint(double)> hermite_dense(std::vector<HermiteNode> nodes,
                                               std::function<State(double)> target,
                                               std::function<double(double)> rate) {
  auto shared = std::make_shared<const std::vector<HermiteNode>>(std::move(nodes));
  return [shared, target = std::move(target), rate = std::move(rate)](double t) {
    const auto& v = *shared;
    const double t0 = v.front().t;
    const double h = v[1].t - v[0].t;
    const auto last = static_cast<long>(v.size()) - 2;
    const long cell = std::clamp(static_cast<long>(std::floor((t - t0) / h)), 0L, last);
    const HermiteNode& a = v[cell];
    const HermiteNode& b = v[cell + 1];
    const double dt = b.t - a.t;
    const double s = (t - a.t) / dt;
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
    const double h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s);
    const double h11 = s * s * (s - 1);
    Vec2 eta{};
    for (int i = 0; i < 2; ++i) {
      eta[i] = h00 * a.eta[i] + h10 * dt * a.eta_dot[i] + h01 * b.eta[i] + h11 * dt * b.eta_dot[i];
    }
    FlowPoint p;
    p.t = t;
    p.target = target(t);
    p.rate = rate(t);
    p.offset = eta - p.target.eta();
    p.velocity = -p.rate * p.offset;
    return p;
  };
}

std::vector<HermiteNode> nodes_of(const std::vector<FlowPoint>& samples) {
  std::vector<HermiteNode> nodes;
  nodes.reserve(samples.size());
  for (const auto& s : samples) nodes.push_back({s.t, s.state().eta(), s.velocity});
  return nodes;
}

}  // namespace

void RelaxSpec::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be > 0");
  require_grid(horizon, grid_points);
}

void DrivenSpec::validate() const {
  require_grid(horizon, grid_points);
  if (!target_path || !rate_path) throw DomainError("driven spec needs target and rate paths");
  const int checks = std::min(grid_points, 1001);
  for (int i = 0; i < checks; ++i) {
    const double t = horizon * i / (checks - 1);
    const double rate = rate_path(t);
    if (!(rate > 0.0) || !std::isfinite(rate)) {
      throw DomainError("rate schedule must stay positive, got " + std::to_string(rate) +
                        " at t=" + std::to_string(t));
    }
  }
}

Curve Trajectory::curve() const {
  std::vector<CurveSample> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back({s.t, s.state()});
  return Curve(std::move(out));
}

Trajectory relax_analytic(const ThermoSystem& system, const RelaxSpec& spec) {
  spec.validate();
  system.validate(spec.p0);
  system.validate(spec.q);
  const Vec2 d0 = spec.p0.eta() - spec.q.eta();
  const State q = spec.q;
  const double lambda = spec.lambda;
  auto exact = [d0, q, lambda](double t) {
    FlowPoint p;
    p.t = t;
    p.target = q;
    p.rate = lambda;
    p.offset = std::exp(-lambda * t) * d0;
    p.velocity = -lambda * p.offset;
    return p;
  };

  Trajectory traj;
  const double h = spec.step();
  traj.samples.reserve(spec.grid_points);
  traj.midpoints.reserve(spec.grid_points - 1);
  for (int i = 0; i < spec.grid_points; ++i) traj.samples.push_back(exact(i * h));
  for (int i = 0; i + 1 < spec.grid_points; ++i) traj.midpoints.push_back(exact((i + 0.5) * h));
  traj.dense = exact;
  fill_series(system, traj);
  return traj;
}

Trajectory relax_ode(const ThermoSystem& system, const RelaxSpec& spec) {
  spec.validate();
  system.validate(spec.p0);
  system.validate(spec.q);
  const Vec2 eta_q = spec.q.eta();
  const double lambda = spec.lambda;
  const double h = spec.step();

  // η(θ) by Newton from the latest known η; any failure is a bad step.
  State guess = spec.p0;
  auto eta_at = [&](const Vec2& theta) {
    try {
      return eta_of(system, theta, guess);
    } catch (const Error& e) {
      throw StepError(std::string("theta-chart step left the valid chart: ") + e.what());
    }
  };
  auto field = [&](const Vec2& theta) {
    const State eta = eta_at(theta);
    return -lambda * system.metric(eta).apply(eta.eta() - eta_q);
  };

  Trajectory traj;
  traj.samples.reserve(spec.grid_points);
  Vec2 theta = system.dual(spec.p0).theta;
  State eta = spec.p0;
  auto record = [&](double t, const State& x) {
    FlowPoint p;
    p.t = t;
    p.target = spec.q;
    p.rate = lambda;
    p.offset = x.eta() - eta_q;
    p.velocity = -lambda * p.offset;
    traj.samples.push_back(p);
  };
  record(0.0, eta);
  for (int i = 1; i < spec.grid_points; ++i) {
    const Vec2 k1 = field(theta);
    const Vec2 k2 = field(theta + (0.5 * h) * k1);
    const Vec2 k3 = field(theta + (0.5 * h) * k2);
    const Vec2 k4 = field(theta + h * k3);
    theta = theta + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    eta = eta_at(theta);
    guess = eta;
    record(i * h, eta);
  }

  const State q = spec.q;
  traj.dense = hermite_dense(
      nodes_of(traj.samples), [q](double) { return q; }, [lambda](double) { return lambda; });
  traj.midpoints.reserve(spec.grid_points - 1);
  for (int i = 0; i + 1 < spec.grid_points; ++i) traj.midpoints.push_back(traj.dense((i + 0.5) * h));
  fill_series(system, traj);
  return traj;
}

Trajectory driven_flow(const ThermoSystem& system, const DrivenSpec& spec) {
  spec.validate();
  system.validate(spec.p0);
  // Half steps so every grid cell has an integrated midpoint node.
  const double half = 0.5 * spec.step();
  const auto& target = spec.target_path;
  const auto& rate = spec.rate_path;
  auto field = [&](double t, const Vec2& eta) {
    const State q = target(t);
    system.validate(q);
    return -rate(t) * (eta - q.eta());
  };
  auto point = [&](double t, const Vec2& eta) {
    FlowPoint p;
    p.t = t;
    p.target = target(t);
    p.rate = rate(t);
    p.offset = eta - p.target.eta();
    p.velocity = -p.rate * p.offset;
    return p;
  };

  Trajectory traj;
  traj.driven = true;
  Vec2 eta = spec.p0.eta();
  traj.samples.push_back(point(0.0, eta));
  const int steps = 2 * (spec.grid_points - 1);
  for (int i = 0; i < steps; ++i) {
    const double t = i * half;
    const Vec2 k1 = field(t, eta);
    const Vec2 k2 = field(t + 0.5 * half, eta + (0.5 * half) * k1);
    const Vec2 k3 = field(t + 0.5 * half, eta + (0.5 * half) * k2);
    const Vec2 k4 = field(t + half, eta + half * k3);
    eta = eta + (half / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    try {
      system.validate(State::from_eta(eta));
    } catch (const DomainError& e) {
      throw StepError(std::string("driven step left the valid chart: ") + e.what());
    }
    const FlowPoint p = point((i + 1) * half, eta);
    if (i % 2 == 0) {
      traj.midpoints.push_back(p);
    } else {
      traj.samples.push_back(p);
    }
  }
  traj.dense = hermite_dense(nodes_of(traj.samples), target, rate);
  fill_series(system, traj);
  return traj;
}

double pregeodesic_residual(const Trajectory& trajectory, double lambda) {
  const auto& s = trajectory.samples;
  if (s.size() < 3) throw ResolutionError("pregeodesic residual needs at least 3 samples");
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    const double h = 0.5 * (s[i + 1].t - s[i - 1].t);
    for (int c = 0; c < 2; ++c) {
      const double accel = (s[i + 1].offset[c] - 2.0 * s[i].offset[c] + s[i - 1].offset[c]) / (h * h);
      const double vel = (s[i + 1].offset[c] - s[i - 1].offset[c]) / (2.0 * h);
      const double residual = std::abs(accel + lambda * vel) / (std::abs(lambda * vel) + 1e-12);
      worst = std::max(worst, residual);
    }
  }
  return worst;
}

}  // namespace thermoflow
