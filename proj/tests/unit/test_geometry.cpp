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
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "thermoflow/errors.hpp"
#include "thermoflow/geometry.hpp"

using namespace thermoflow;
using thermoflow::testing::rel_err;

namespace {

const State kQ{275.0, -1e5};

Curve isobar(double from, double to, int n) {
  std::vector<CurveSample> s;
  for (int i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / (n - 1);
    s.push_back({u, {from + u * (to - from), -1e5}});
  }
  return Curve(std::move(s));
}

}  // namespace

TEST_CASE("gradient of the divergence is the eta offset") {
  const ClassicalIdealGasTP gas(1.5, 1.0, kQ);
  const TangentVec zero = grad_divergence(gas, kQ, kQ);
  CHECK(zero.components[0] == 0.0);
  CHECK(zero.components[1] == 0.0);
  const TangentVec g = grad_divergence(gas, {375.0, -1e5}, kQ);
  CHECK(g.components[0] == 100.0);
  CHECK(g.components[1] == 0.0);
  CHECK(g.base == State{375.0, -1e5});
}

TEST_CASE("gradient agrees with the inverse metric applied to the differential") {
  const QuantumRigidGas b(Statistics::kBoson, 1.0, 0.5, 1.0, {10.0, -5.0});
  const ClassicalIdealGasTP gas(1.5, 1.0, kQ);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  auto check = [](const ThermoSystem& sys, const State& p, const State& q) {
    const double h0 = 1e-5 * p.T;
    const double h1 = 1e-5 * std::abs(p.eta2);
    const Vec2 dD{(divergence(sys, {p.T + h0, p.eta2}, q) - divergence(sys, {p.T - h0, p.eta2}, q)) /
                      (2 * h0),
                  (divergence(sys, {p.T, p.eta2 + h1}, q) - divergence(sys, {p.T, p.eta2 - h1}, q)) /
                      (2 * h1)};
    const Vec2 fd = sys.metric(p).inverse().apply(dD);
    const Vec2 exact = grad_divergence(sys, p, q).components;
    const double scale = std::hypot(exact[0], exact[1]);
    CHECK(std::abs(fd[0] - exact[0]) < 1e-5 * scale);
    CHECK(std::abs(fd[1] - exact[1]) < 1e-5 * scale);
  };
  check(b, {12.0, -5.0}, {10.0, -5.0});
  const Vec2 expected = grad_divergence(b, {12.0, -5.0}, {10.0, -5.0}).components;
  CHECK(expected[0] == 2.0);
  CHECK(expected[1] == 0.0);
  for (int i = 0; i < 100; ++i) {
    check(gas, {kQ.T * (1 + u(rng)), kQ.eta2 * (1 + u(rng))}, kQ);
    check(b, {10.0 * (1 + u(rng)), -5.0 * (1 + u(rng))}, {10.0, -5.0});
  }
}

TEST_CASE("near-singular metrics are flagged") {
  const ToyQuadratic toy({1.0, 0.0, 1e-13}, {0.0, 0.0});
  CHECK_THROWS_AS(grad_divergence(toy, {1.0, 1.0}, {0.0, 0.0}), SingularMetricError);
}

TEST_CASE("squared norm") {
  const ClassicalIdealGasTP gas(1.5, 1.0, kQ);
  CHECK(norm_sq(gas, {kQ, {0.0, 0.0}}) == 0.0);
  CHECK(norm_sq(gas, {kQ, {100.0, 0.0}}) == doctest::Approx(2.5 / 275.0 * 1e4).epsilon(1e-14));
  CHECK(norm_sq(gas, {kQ, {100.0, 0.0}}) == doctest::Approx(90.909).epsilon(1e-5));
  const TangentVec v{{310.0, -1.3e5}, {3.0, -200.0}};
  const TangentVec w{v.base, 2.0 * v.components};
  CHECK(norm_sq(gas, w) == doctest::Approx(4.0 * norm_sq(gas, v)).epsilon(1e-14));
  CHECK(norm_sq(gas, v) > 0.0);
}

TEST_CASE("cubic form") {
  const ClassicalIdealGasTP gas(1.5, 1.0, {1.0, -1.0});
  CHECK(cubic_form(gas, {{1.0, -1.0}, {0.0, 0.0}}) == 0.0);
  CHECK(cubic_form(gas, {{1.0, -1.0}, {1.0, 0.0}}) == doctest::Approx(2.5));
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const QuantumRigidGas f(Statistics::kFermion, 1.0, 0.5, 1.0, {2.0, -3.0});
  for (int i = 0; i < 100; ++i) {
    const State s{2.0 + u(rng), -3.0 + u(rng)};
    const Vec2 v{u(rng), u(rng)};
    CHECK(cubic_form(f, {s, -1.0 * v}) == -cubic_form(f, {s, v}));
  }
}

TEST_CASE("curve length") {
  const ClassicalIdealGasTP gas(1.5, 1.0, kQ);
  const double exact = 2.0 * std::sqrt(2.5) * (std::sqrt(375.0) - std::sqrt(275.0));
  CHECK(exact == doctest::Approx(8.797).epsilon(1e-4));
  CHECK(rel_err(curve_length(gas, isobar(275.0, 375.0, 1001)), exact) < 1e-8);

  const double l1 = curve_length(gas, isobar(275.0, 375.0, 101));
  const double l2 = curve_length(gas, isobar(275.0, 375.0, 201));
  const double l4 = curve_length(gas, isobar(275.0, 375.0, 401));
  CHECK(std::abs(l2 - l1) <= 5.0 * std::abs(l4 - l2));
  CHECK(std::abs(l1 - exact) / std::abs(l2 - exact) == doctest::Approx(4.0).epsilon(0.01));

  const Curve still({{0.0, kQ}, {1.0, kQ}, {2.0, kQ}});
  CHECK(curve_length(gas, still) == 0.0);
  CHECK_THROWS_AS(curve_length(gas, isobar(275.0, 375.0, 3)), ResolutionError);
}

TEST_CASE("curves need increasing times") {
  CHECK_THROWS_AS(Curve({{0.0, kQ}}), DomainError);
  CHECK_THROWS_AS(Curve({{0.0, kQ}, {0.0, kQ}}), DomainError);
}
