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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "thermoflow/analysis.hpp"
#include "thermoflow/errors.hpp"

using namespace thermoflow;
using thermoflow::testing::rel_err;

namespace {

const State kQ{275.0, -1e5};
const ClassicalIdealGasTP kGas(1.5, 1.0, kQ);

Trajectory relax(const ThermoSystem& sys, const State& p0, const State& q, double horizon = 20.0,
                 int grid = 4001) {
  return relax_analytic(sys, {p0, q, 1.0, horizon, grid});
}

}  // namespace

TEST_CASE("equidistant partner on the isobar") {
  const auto pair = solve_equidistant(kGas, kQ, {375.0, -1e5}, constant_eta2_line(-1e5), {50.0, 275.0});
  CHECK(pair.hot == State{375.0, -1e5});
  CHECK(pair.cold == pair.solved);
  CHECK(pair.hot.T > kQ.T);
  CHECK(pair.cold.T < kQ.T);
  CHECK(std::abs(divergence(kGas, pair.cold, kQ) - pair.divergence_value) <=
        1e-10 * (1 + pair.divergence_value));

  // Dense scan of the isobar below T_q for the level crossing.
  const double level = pair.divergence_value;
  double scan = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double a = 100.0 + 175.0 * i / n;
    const double b = 100.0 + 175.0 * (i + 1) / n;
    const double fa = divergence(kGas, {a, -1e5}, kQ) - level;
    const double fb = divergence(kGas, {b, -1e5}, kQ) - level;
    if (fa >= 0.0 && fb < 0.0) {
      scan = a + (b - a) * fa / (fa - fb);
      break;
    }
  }
  CHECK(std::abs(pair.cold.T - scan) < 1e-6);
}

TEST_CASE("equidistant partner in a quadratic potential is the mirror image") {
  const ToyQuadratic toy({2.0, 0.0, 1.0}, {0.0, 0.0});
  const State q{1.0, 2.0};
  const auto pair = solve_equidistant(toy, q, {1.5, 2.0}, constant_eta2_line(2.0), {-3.0, 1.0});
  CHECK(pair.cold.T == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("equidistant partner on the line through the second Mpemba start") {
  const State given{375.0, -1e5};
  const auto line = ray_line(kQ, {300.0, -189487.5});
  const auto pair = solve_equidistant(kGas, kQ, given, line, {0.5, 2.0});
  CHECK(rel_err(pair.solved.T, 300.0) < 1e-5);
  CHECK(rel_err(pair.solved.eta2, -189487.5) < 1e-5);
}

TEST_CASE("equidistant solver errors") {
  CHECK_THROWS_AS(solve_equidistant(kGas, kQ, {375.0, -1e5}, constant_eta2_line(-1e5), {200.0, 275.0}),
                  BracketError);
  CHECK_THROWS_AS(solve_equidistant(kGas, kQ, kQ, constant_eta2_line(-1e5), {50.0, 275.0}),
                  DomainError);
}

TEST_CASE("isobaric warming is faster") {
  const auto pair = solve_equidistant(kGas, kQ, {375.0, -1e5}, constant_eta2_line(-1e5), {50.0, 275.0});
  const Trajectory warming = relax(kGas, pair.cold, kQ);
  const Trajectory cooling = relax(kGas, pair.hot, kQ);
  const AsymmetryReport r = classify_asymmetry(kGas, warming, cooling);
  CHECK(r.faster == Branch::kFirst);
  REQUIRE(r.matches.size() == 1);
  // Isobaric cubic comparison: (c+1)N(Ṫ⁺³/T⁺² − Ṫ⁻³/T⁻²) < 0.
  const FlowPoint up = warming.dense(r.t_star);
  const FlowPoint down = cooling.dense(r.t_star);
  const double closed = 2.5 * (std::pow(down.velocity[0], 3) / std::pow(down.state().T, 2) -
                               std::pow(up.velocity[0], 3) / std::pow(up.state().T, 2));
  CHECK(closed < 0.0);
  CHECK(rel_err(r.cubic_second - r.cubic_first, closed) < 1e-9);
  CHECK(r.delta_dd < 0.0);
  REQUIRE(r.extrema.size() == 1);
  CHECK(r.extrema[0].maximum);
  CHECK(r.coincidence_gap < warming.samples[1].t);
  CHECK(std::abs(r.extrema[0].t_parabolic - r.extrema[0].t_refined) < warming.samples[1].t);
  for (std::size_t i = 1; i + 1 < warming.samples.size(); ++i) {
    CHECK(warming.series[i].divergence <= cooling.series[i].divergence);
  }
  CHECK(isobaric_product_check(kGas, cooling, warming, kQ) < 1e-6);
}

TEST_CASE("isobaric product check preconditions") {
  const Trajectory hot = relax(kGas, {375.0, -1e5}, kQ);
  const Trajectory off = relax(kGas, {196.6, -1e5}, kQ);
  CHECK_THROWS_AS(isobaric_product_check(kGas, hot, off, kQ), DomainError);
  const Trajectory tilted = relax(kGas, {300.0, -189487.5}, kQ);
  CHECK_THROWS_AS(isobaric_product_check(kGas, hot, tilted, kQ), DomainError);
  const ToyQuadratic toy({1.0, 0.0, 1.0}, {0.0, 0.0});
  const Trajectory a = relax(toy, {1.0, 0.0}, {0.0, 0.0});
  CHECK_THROWS_AS(isobaric_product_check(toy, a, a, {0.0, 0.0}), DomainError);
}

TEST_CASE("rigid boson gas cools faster at negative chemical potential") {
  const State q{1.0, -1.0};
  const QuantumRigidGas b(Statistics::kBoson, 1.0, 0.5, 1.0, q);
  const auto pair = solve_equidistant(b, q, {1.3, -1.0}, constant_eta2_line(-1.0), {0.2, 1.0});
  const Trajectory warming = relax(b, pair.cold, q);
  const Trajectory cooling = relax(b, pair.hot, q);
  const AsymmetryReport r = classify_asymmetry(b, warming, cooling);
  CHECK(r.faster == Branch::kSecond);
  for (std::size_t i = 1; i + 1 < warming.samples.size(); ++i) {
    CHECK(cooling.series[i].divergence <= warming.series[i].divergence);
  }
}

TEST_CASE("identical trajectories are inconclusive") {
  const Trajectory a = relax(kGas, {375.0, -1e5}, kQ);
  const AsymmetryReport r = classify_asymmetry(kGas, a, a);
  CHECK(r.faster == Branch::kInconclusive);
  CHECK(r.matches.empty());
  CHECK(r.extrema.empty());
  CHECK(std::isnan(r.t_star));
}

TEST_CASE("speeds that never match within the horizon are a grid error") {
  const Trajectory a = relax(kGas, {375.0, -1e5}, kQ, 0.2, 201);
  const Trajectory b = relax(kGas, {250.0, -1e5}, kQ, 0.2, 201);
  CHECK_THROWS_AS(classify_asymmetry(kGas, a, b), GridError);
  const Trajectory c = relax(kGas, {200.0, -1e5}, kQ, 0.2, 101);
  CHECK_THROWS_AS(classify_asymmetry(kGas, a, c), GridError);
}

TEST_CASE("Mpemba pair") {
  const MpembaResult r = mpemba_scenario();
  CHECK(r.t_star == doctest::Approx(0.511743).epsilon(2e-4));
  CHECK(std::abs(r.t_star - r.t_star_critical) < 1e-6);
  CHECK(r.faster == Branch::kFirst);
  CHECK(rel_err(r.divergence_first, r.divergence_second) < 1e-3);
  CHECK(r.delta_a > 0.0);
  CHECK(r.delta_d_at_t_star > 0.0);
  const auto& s1 = r.first.series;
  const auto& s2 = r.second.series;
  for (std::size_t i = 0; i < s1.size(); ++i) {
    const double t = r.first.samples[i].t;
    if (t > 0.01 && t < 15.0) CHECK(s2[i].divergence - s1[i].divergence > 0.0);
  }
  CHECK(std::abs(s2.back().divergence - s1.back().divergence) < 1e-6);
  CHECK(std::abs(s2.front().divergence - s1.front().divergence) < 1e-3);
}

TEST_CASE("cubic potential is the cubic form of the flow velocity") {
  const State p{300.0, -189487.5};
  const TangentVec grad = grad_divergence(kGas, p, kQ);
  const double lambda = 2.0;
  const TangentVec v{p, -lambda * grad.components};
  CHECK(cubic_potential(kGas, p, kQ, lambda) == doctest::Approx(cubic_form(kGas, v)).epsilon(1e-14));
}

TEST_CASE("speed cost bound") {
  const Trajectory tr = relax_analytic(kGas, {{300.0, -189487.5}, kQ, 1.0, 20.0, 10001});
  const auto rows = tur_audit(kGas, tr, 1.0, {0.002, 0.1, 1.0, 5.0, 20.0});
  CHECK(rows[0].ratio == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& row : rows) CHECK(row.ratio >= 1.0 - 1e-8);
  CHECK(rows[3].ratio > 1.0);
  CHECK(rel_err(rows[4].delta_a, tr.series.front().divergence) < 1e-6);
  CHECK_THROWS_AS(tur_audit(kGas, tr, 1.0, {0.0}), GridError);
  CHECK_THROWS_AS(tur_audit(kGas, tr, 1.0, {25.0}), GridError);

  const Trajectory coarse = relax_analytic(kGas, {{300.0, -189487.5}, kQ, 1.0, 20.0, 11});
  CHECK_THROWS_AS(tur_audit(kGas, coarse, 1.0, {20.0}), ResolutionError);
}

TEST_CASE("Horse-Carrot bound") {
  const State start{275.0, -1e5};
  auto path = [](double tau) {
    return [tau](double t) { return State{275.0 + 100.0 * t / tau, -1e5}; };
  };
  const DrivenSpec wavy{start, path(10.0), [](double t) { return 1.0 + 0.5 * std::sin(t); }, 10.0,
                        10001};
  const HorseCarrotRow row = horse_carrot_audit(kGas, driven_flow(kGas, wavy));
  CHECK(row.ratio > 1.0);
  CHECK(row.eps_bar > 2.0 / 3.0);
  CHECK(row.eps_bar < 2.0);

  const DrivenSpec fast{start, path(0.1), [](double) { return 1.0; }, 0.1, 2001};
  const DrivenSpec slow{start, path(100.0), [](double) { return 1.0; }, 100.0, 20001};
  const HorseCarrotRow f = horse_carrot_audit(kGas, driven_flow(kGas, fast));
  const HorseCarrotRow s = horse_carrot_audit(kGas, driven_flow(kGas, slow));
  CHECK(s.delta_a < f.delta_a);
  CHECK(f.ratio >= 1.0 - 1e-8);
  CHECK(s.ratio >= 1.0 - 1e-8);

  const DrivenSpec still{{375.0, -1e5}, [](double) { return kQ; }, [](double) { return 1.0; }, 20.0,
                         10001};
  const HorseCarrotRow h = horse_carrot_audit(kGas, driven_flow(kGas, still));
  const auto tur = tur_audit(kGas, relax_analytic(kGas, {{375.0, -1e5}, kQ, 1.0, 20.0, 10001}), 1.0,
                             {20.0});
  CHECK(h.eps_bar == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel_err(h.delta_a, tur[0].delta_a) < 1e-8);
  CHECK(rel_err(h.bound, tur[0].bound) < 1e-8);
}

TEST_CASE("level set of the divergence passes through both Mpemba starts") {
  const double level = divergence(kGas, {375.0, -1e5}, kQ);
  const auto segments =
      divergence_level_set(kGas, kQ, level, {150.0, 450.0}, {-3e5, -3e4}, 121, 121);
  REQUIRE(segments.size() > 50);
  for (const auto& seg : segments) {
    CHECK(std::abs(divergence(kGas, seg.a, kQ) - level) < 0.02 * level);
  }
  auto near = [&](const State& p) {
    for (const auto& seg : segments) {
      if (std::abs(seg.a.T - p.T) < 5.0 && std::abs(seg.a.eta2 - p.eta2) < 5e3) return true;
    }
    return false;
  };
  CHECK(near({375.0, -1e5}));
  CHECK(near({300.0, -189487.5}));
}

TEST_CASE("Mpemba sweep finds the published partner") {
  const auto rows = mpemba_sweep(kGas, kQ, {375.0, -1e5}, 1.0, {280.0, 300.0, 320.0},
                                 {-4e5, -1.2e5}, {20.0, 4001});
  bool found = false;
  for (const auto& row : rows) {
    if (row.T == 300.0) {
      found = true;
      CHECK(rel_err(row.eta2, -189487.5) < 1e-3);
      CHECK(row.faster == Branch::kFirst);
      CHECK(row.t_star == doctest::Approx(0.5117).epsilon(1e-3));
    }
  }
  CHECK(found);
}
