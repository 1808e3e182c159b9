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

#include "thermoflow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "thermoflow/errors.hpp"
#include "thermoflow/geometry.hpp"

namespace thermoflow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double speed_sq_at(const ThermoSystem& system, const FlowPoint& p) {
  return system.metric(p.state()).quadratic(p.velocity);
}

double divergence_at(const ThermoSystem& system, const FlowPoint& p) {
  return divergence_from_offset(system, p.target, p.offset);
}

void require_same_grid(const Trajectory& a, const Trajectory& b) {
  if (a.samples.size() != b.samples.size() || a.samples.size() < 3) {
    throw GridError("trajectories must share a grid of at least 3 samples");
  }
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double ta = a.samples[i].t;
    const double tb = b.samples[i].t;
    if (std::abs(ta - tb) > 1e-12 * std::max(1.0, std::abs(ta))) {
      throw GridError("trajectories are sampled on different grids");
    }
  }
}

int sign_of(double x, double zero_band) {
  if (x > zero_band) return 1;
  if (x < -zero_band) return -1;
  return 0;
}

void check_resolution(const Trajectory& traj, std::size_t last) {
  for (std::size_t i = 1; i <= last; ++i) {
    check_segment(traj.samples[i - 1].state(), traj.samples[i].state());
  }
}

}  // namespace

ConstraintLine constant_eta2_line(double eta2) {
  return {"constant-eta2", [eta2](double s) { return State{s, eta2}; }};
}

ConstraintLine constant_temperature_line(double T) {
  return {"constant-T", [T](double s) { return State{T, s}; }};
}

ConstraintLine ray_line(const State& q, const State& through) {
  const Vec2 dir = through.eta() - q.eta();
  return {"ray", [q, dir](double s) { return State{q.T + s * dir[0], q.eta2 + s * dir[1]}; }};
}

EquidistantPair solve_equidistant(const ThermoSystem& system, const State& q, const State& given,
                                  const ConstraintLine& line, Bracket bracket) {
  system.validate(q);
  system.validate(given);
  if (given == q) throw DomainError("solve_equidistant: given state coincides with the target");
  const double level = divergence(system, given, q);
  auto gap = [&](double s) { return divergence(system, line.at(s), q) - level; };
  const double f_lo = gap(bracket.lo);
  const double f_hi = gap(bracket.hi);
  if (f_lo * f_hi > 0.0) {
    std::ostringstream msg;
    msg << "no sign change of D*-level gap on [" << bracket.lo << ", " << bracket.hi
        << "] (values " << f_lo << ", " << f_hi << ")";
    throw BracketError(msg.str());
  }
  double s = 0.0;
  if (f_lo == 0.0) {
    s = bracket.lo;
  } else if (f_hi == 0.0) {
    s = bracket.hi;
  } else {
    auto done = [](double a, double b) {
      return std::abs(b - a) <= 1e-12 * std::max(std::abs(a), std::abs(b));
    };
    const auto root = boost::math::tools::bisect(gap, bracket.lo, bracket.hi, done);
    s = 0.5 * (root.first + root.second);
  }
  const State solved = line.at(s);
  EquidistantPair pair;
  pair.q = q;
  pair.solved = solved;
  pair.parameter = s;
  pair.divergence_value = level;
  if (solved.T >= given.T) {
    pair.hot = solved;
    pair.cold = given;
  } else {
    pair.hot = given;
    pair.cold = solved;
  }
  return pair;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::kFirst: return "gamma1";
    case Branch::kSecond: return "gamma2";
    case Branch::kInconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::vector<CriticalPoint> divergence_gap_extrema(const ThermoSystem& system,
                                                  const Trajectory& first,
                                                  const Trajectory& second) {
  require_same_grid(first, second);
  const std::size_t n = first.samples.size();
  std::vector<double> gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    gap[i] = second.series[i].divergence - first.series[i].divergence;
  }
  auto dense_gap = [&](double t) {
    return divergence_at(system, second.dense(t)) - divergence_at(system, first.dense(t));
  };

  std::vector<CriticalPoint> out;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double left = gap[i] - gap[i - 1];
    const double right = gap[i + 1] - gap[i];
    const bool is_max = left > 0.0 && right < 0.0;
    const bool is_min = left < 0.0 && right > 0.0;
    if (!is_max && !is_min) continue;

    CriticalPoint cp;
    cp.maximum = is_max;
    cp.t_grid = first.samples[i].t;
    const double h = first.samples[i + 1].t - first.samples[i].t;
    const double curvature = gap[i + 1] - 2.0 * gap[i] + gap[i - 1];
    cp.t_parabolic = cp.t_grid + 0.5 * h * (gap[i - 1] - gap[i + 1]) / curvature;

    const double sign = is_max ? -1.0 : 1.0;
    auto objective = [&](double t) { return sign * dense_gap(t); };
    const auto best = boost::math::tools::brent_find_minima(
        objective, first.samples[i - 1].t, first.samples[i + 1].t,
        std::numeric_limits<double>::digits / 2);
    cp.t_refined = best.first;
    cp.value = sign * best.second;
    out.push_back(cp);
  }
  return out;
}

AsymmetryReport classify_asymmetry(const ThermoSystem& system, const Trajectory& first,
                                   const Trajectory& second) {
  require_same_grid(first, second);
  const std::size_t n = first.samples.size();
  auto speed_gap = [&](double t) {
    return speed_sq_at(system, first.dense(t)) - speed_sq_at(system, second.dense(t));
  };

  AsymmetryReport report;
  double largest_gap = 0.0;
  int prev_sign = 0;
  std::size_t prev_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double s1 = first.series[i].speed_sq;
    const double s2 = second.series[i].speed_sq;
    const double gap = s1 - s2;
    largest_gap = std::max(largest_gap, std::abs(gap));
    const int sgn = sign_of(gap, 1e-13 * (s1 + s2));
    if (sgn == 0) continue;
    if (prev_sign != 0 && sgn != prev_sign) {
      double lo = first.samples[prev_index].t;
      double hi = first.samples[i].t;
      double f_lo = speed_gap(lo);
      while (hi - lo > 1e-12 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = speed_gap(mid);
        if ((f_mid > 0.0) == (f_lo > 0.0)) {
          lo = mid;
          f_lo = f_mid;
        } else {
          hi = mid;
        }
      }
      SpeedMatch m;
      m.t = 0.5 * (lo + hi);
      const FlowPoint p1 = first.dense(m.t);
      const FlowPoint p2 = second.dense(m.t);
      m.cubic_first = system.amari_chentsov(p1.state()).cubic(p1.velocity);
      m.cubic_second = system.amari_chentsov(p2.state()).cubic(p2.velocity);
      m.delta_dd = (m.cubic_second - m.cubic_first) / p1.rate;
      report.matches.push_back(m);
    }
    prev_sign = sgn;
    prev_index = i;
  }

  report.extrema = divergence_gap_extrema(system, first, second);

  if (report.matches.empty()) {
    const double scale = first.series.front().speed_sq + second.series.front().speed_sq;
    if (largest_gap <= 1e-13 * scale || largest_gap == 0.0) {
      report.t_star = kNaN;
      report.delta_dd = kNaN;
      report.cubic_first = kNaN;
      report.cubic_second = kNaN;
      report.faster = Branch::kInconclusive;
      return report;
    }
    throw GridError("speeds differ but never match within the horizon");
  }

  const SpeedMatch& head = report.matches.front();
  report.t_star = head.t;
  report.delta_dd = head.delta_dd;
  report.cubic_first = head.cubic_first;
  report.cubic_second = head.cubic_second;
  const bool first_wins = std::all_of(report.matches.begin(), report.matches.end(),
                                      [](const SpeedMatch& m) { return m.cubic_first > m.cubic_second; });
  const bool second_wins = std::all_of(report.matches.begin(), report.matches.end(),
                                       [](const SpeedMatch& m) { return m.cubic_first < m.cubic_second; });
  report.faster = first_wins ? Branch::kFirst : second_wins ? Branch::kSecond : Branch::kInconclusive;

  for (const auto& cp : report.extrema) {
    double nearest = INFINITY;
    for (const auto& m : report.matches) nearest = std::min(nearest, std::abs(cp.t_refined - m.t));
    report.coincidence_gap = std::max(report.coincidence_gap, nearest);
  }
  return report;
}

double isobaric_product_check(const ThermoSystem& system, const Trajectory& hot,
                              const Trajectory& cold, const State& q) {
  if (system.kind() != SystemKind::kIdealGasTP) {
    throw DomainError("isobaric_product_check applies to the closed ideal gas only");
  }
  system.validate(q);
  for (const Trajectory* traj : {&hot, &cold}) {
    for (const auto& p : traj->samples) {
      if (!(p.target == q) || p.offset[1] != 0.0) {
        throw DomainError("isobaric_product_check needs isobaric relaxations to q");
      }
    }
  }
  const double d_hot = hot.series.front().divergence;
  const double d_cold = cold.series.front().divergence;
  if (std::abs(d_hot - d_cold) > 1e-8 * (1.0 + std::max(d_hot, d_cold))) {
    std::ostringstream msg;
    msg << "initial states are not equidistant (D*=" << d_hot << " vs " << d_cold << ")";
    throw DomainError(msg.str());
  }
  const auto extrema = divergence_gap_extrema(system, cold, hot);
  if (extrema.empty()) throw GridError("no critical point of the divergence gap on the grid");
  const double t_star = extrema.front().t_refined;
  const double t_hot = hot.dense(t_star).state().T;
  const double t_cold = cold.dense(t_star).state().T;
  return std::abs(t_hot * t_cold - q.T * q.T) / (q.T * q.T);
}

std::vector<TurRow> tur_audit(const ThermoSystem& system, const Trajectory& trajectory,
                              double lambda, const std::vector<double>& taus) {
  (void)system;
  if (trajectory.driven) throw DomainError("tur_audit expects an undriven trajectory");
  if (!(lambda > 0.0)) throw DomainError("lambda must be > 0");
  const auto& s = trajectory.samples;
  const double h = s[1].t - s[0].t;
  std::vector<TurRow> rows;
  for (double tau : taus) {
    if (!(tau > 0.0) || tau > trajectory.horizon() * (1.0 + 1e-12)) {
      throw GridError("tau outside (0, horizon]: " + std::to_string(tau));
    }
    const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(tau / h)), 1,
                                           s.size() - 1);
    check_resolution(trajectory, k);
    TurRow row;
    row.tau = s[k].t;
    row.delta_a = trajectory.speed_sq_integral[k] / lambda;
    const double length = trajectory.length[k];
    row.bound = length * length / (lambda * row.tau);
    row.ratio = row.bound > 0.0 ? row.delta_a / row.bound : 1.0;
    rows.push_back(row);
  }
  return rows;
}

HorseCarrotRow horse_carrot_audit(const ThermoSystem& system, const Trajectory& driven) {
  (void)system;
  const std::size_t last = driven.samples.size() - 1;
  check_resolution(driven, last);
  HorseCarrotRow row;
  row.tau = driven.horizon();
  row.delta_a = driven.dissipated[last];
  row.length = driven.length[last];
  const double speed_integral = driven.speed_sq_integral[last];
  if (speed_integral > 0.0) {
    row.eps_bar = row.delta_a / speed_integral;
  } else {
    double mean = 0.0;
    for (const auto& m : driven.midpoints) mean += 1.0 / m.rate;
    row.eps_bar = mean / static_cast<double>(driven.midpoints.size());
  }
  row.bound = row.eps_bar * row.length * row.length / row.tau;
  row.ratio = row.bound > 0.0 ? row.delta_a / row.bound : 1.0;
  return row;
}

double cubic_potential(const ThermoSystem& system, const State& state, const State& q,
                       double lambda) {
  const TangentVec grad = grad_divergence(system, state, q);
  return -lambda * lambda * lambda * cubic_form(system, grad);
}

MpembaResult mpemba_scenario(const MpembaOptions& options) {
  MpembaResult r;
  const ClassicalIdealGasTP gas(r.c, r.n0kb, r.q);
  RelaxSpec spec{r.p_first, r.q, r.lambda, options.horizon, options.grid_points};
  r.first = relax_analytic(gas, spec);
  spec.p0 = r.p_second;
  r.second = relax_analytic(gas, spec);
  r.divergence_first = r.first.series.front().divergence;
  r.divergence_second = r.second.series.front().divergence;
  r.report = classify_asymmetry(gas, r.first, r.second);
  r.t_star = r.report.t_star;
  r.t_star_critical = r.report.extrema.empty() ? kNaN : r.report.extrema.front().t_refined;
  // With γ̇ = −λ grad D*, A = −λ³ C(grad, grad, grad) = C(γ̇, γ̇, γ̇).
  r.delta_a = r.report.cubic_first - r.report.cubic_second;
  r.delta_d_at_t_star = divergence_at(gas, r.second.dense(r.t_star)) -
                        divergence_at(gas, r.first.dense(r.t_star));
  r.faster = r.report.faster;
  return r;
}

std::vector<LevelSegment> divergence_level_set(const ThermoSystem& system, const State& q,
                                               double level, Bracket t_range, Bracket eta2_range,
                                               int nx, int ny) {
  if (nx < 2 || ny < 2) throw DomainError("level set grid needs at least 2x2 nodes");
  auto node = [&](int i, int j) {
    return State{t_range.lo + (t_range.hi - t_range.lo) * i / (nx - 1),
                 eta2_range.lo + (eta2_range.hi - eta2_range.lo) * j / (ny - 1)};
  };
  std::vector<double> f(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < ny; ++j) f[i * ny + j] = divergence(system, node(i, j), q) - level;
  }
  auto value = [&](int i, int j) { return f[i * ny + j]; };
  auto cross = [](const State& a, double fa, const State& b, double fb) {
    const double w = fa / (fa - fb);
    return State{a.T + w * (b.T - a.T), a.eta2 + w * (b.eta2 - a.eta2)};
  };

  std::vector<LevelSegment> out;
  for (int i = 0; i + 1 < nx; ++i) {
    for (int j = 0; j + 1 < ny; ++j) {
      // Corners counter-clockwise: 00, 10, 11, 01; edges bottom, right, top, left.
      const State c[4] = {node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)};
      const double v[4] = {value(i, j), value(i + 1, j), value(i + 1, j + 1), value(i, j + 1)};
      State hit[4];
      bool has[4] = {false, false, false, false};
      int count = 0;
      for (int e = 0; e < 4; ++e) {
        const int a = e;
        const int b = (e + 1) % 4;
        if ((v[a] >= 0.0) != (v[b] >= 0.0)) {
          hit[e] = cross(c[a], v[a], c[b], v[b]);
          has[e] = true;
          ++count;
        }
      }
      if (count == 2) {
        int first = -1;
        for (int e = 0; e < 4; ++e) {
          if (!has[e]) continue;
          if (first < 0) {
            first = e;
          } else {
            out.push_back({hit[first], hit[e]});
          }
        }
      } else if (count == 4) {
        const State centre{0.5 * (c[0].T + c[2].T), 0.5 * (c[0].eta2 + c[2].eta2)};
        const double vc = divergence(system, centre, q) - level;
        const bool isolate_00_11 = (v[0] >= 0.0) != (vc >= 0.0);
        if (isolate_00_11) {
          out.push_back({hit[3], hit[0]});
          out.push_back({hit[1], hit[2]});
        } else {
          out.push_back({hit[0], hit[1]});
          out.push_back({hit[2], hit[3]});
        }
      }
    }
  }
  return out;
}

std::vector<SweepRow> mpemba_sweep(const ThermoSystem& system, const State& q, const State& first,
                                   double lambda, const std::vector<double>& temperatures,
                                   Bracket eta2_bracket, const MpembaOptions& options) {
  std::vector<SweepRow> rows;
  for (double T : temperatures) {
    try {
      const auto pair = solve_equidistant(system, q, first, constant_temperature_line(T),
                                          eta2_bracket);
      RelaxSpec spec{first, q, lambda, options.horizon, options.grid_points};
      const Trajectory a = relax_analytic(system, spec);
      spec.p0 = pair.solved;
      const Trajectory b = relax_analytic(system, spec);
      const AsymmetryReport rep = classify_asymmetry(system, a, b);
      if (rep.matches.empty()) continue;
      rows.push_back({T, pair.solved.eta2, rep.t_star, rep.cubic_first - rep.cubic_second,
                      rep.faster});
    } catch (const BracketError&) {
      continue;
    } catch (const GridError&) {
      continue;
    }
  }
  return rows;
}

}  // namespace thermoflow
