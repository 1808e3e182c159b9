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
#include <numbers>

#include "doctest.h"
#include "thermoflow/errors.hpp"
#include "thermoflow/specfun.hpp"

namespace sf = thermoflow::specfun;
using thermoflow::specfun::polylog;

namespace {

// Plain alternating-series sum in long double with Kahan compensation.
double brute_polylog(double s, double z, long terms) {
  long double sum = 0.0L;
  long double carry = 0.0L;
  long double power = 1.0L;
  for (long k = 1; k <= terms; ++k) {
    power *= z;
    const long double term = power / std::pow(static_cast<long double>(k), s) - carry;
    const long double next = sum + term;
    carry = (next - sum) - term;
    sum = next;
  }
  return static_cast<double>(sum);
}

}  // namespace

TEST_CASE("polylog of order one is -log(1-z)") {
  CHECK(std::abs(polylog(1.0, 0.5) - std::numbers::ln2) < 1e-12);
  for (double z : {-0.9, -0.3, 0.2, 0.7}) {
    CHECK(polylog(1.0, z) == doctest::Approx(-std::log1p(-z)).epsilon(1e-12));
  }
}

TEST_CASE("polylog matches high precision reference values") {
  CHECK(polylog(1.5, 0.5) == doctest::Approx(0.624837020819913853).epsilon(1e-12));
  CHECK(polylog(2.5, -0.5) == doctest::Approx(-0.462297782190063438).epsilon(1e-12));
  CHECK(polylog(-0.5, 0.9) == doctest::Approx(25.7084667027975890).epsilon(1e-10));
  CHECK(polylog(0.5, 0.99) == doctest::Approx(16.2218307534281035).epsilon(1e-10));
}

TEST_CASE("polylog at half order agrees with brute force summation") {
  const double oracle = brute_polylog(0.5, -0.9, 1'000'000);
  CHECK(std::abs(polylog(0.5, -0.9) - oracle) < 1e-10);
  CHECK(std::abs(oracle + 0.565525948458652768) < 1e-12);
}

TEST_CASE("polylog tends to z near zero") {
  CHECK(polylog(2.0, 1e-8) == doctest::Approx(1e-8).epsilon(1e-7));
  for (double s : {-0.5, 0.0, 0.5, 1.5, 2.5, 4.0}) {
    for (double z : {-0.01, -1e-3, 1e-5, 0.004, 0.01}) {
      CHECK(std::abs(polylog(s, z) - z) <= 2 * z * z);
    }
  }
}

TEST_CASE("polylog satisfies z d/dz Li_s = Li_{s-1}") {
  for (double s : {0.5, 1.5, 2.5}) {
    for (double z : {-0.9, -0.5, -0.1, 0.1, 0.5, 0.9}) {
      const double h = 1e-5 * std::abs(z);
      const double derivative = (polylog(s, z + h) - polylog(s, z - h)) / (2 * h);
      const double lower = polylog(s - 1.0, z);
      CHECK(std::abs(z * derivative - lower) <= 1e-6 * std::abs(lower));
    }
  }
}

TEST_CASE("polylog is monotone in z and in the order") {
  for (double s : {-0.5, 0.5, 1.5, 2.5}) {
    double prev = polylog(s, -0.95);
    for (double z = -0.9; z < 0.96; z += 0.05) {
      const double v = polylog(s, z);
      CHECK(v > prev);
      prev = v;
    }
  }
  for (double z : {0.1, 0.5, 0.9}) {
    CHECK(polylog(0.5, z) >= polylog(1.5, z));
    CHECK(polylog(1.5, z) >= polylog(2.5, z));
  }
}

TEST_CASE("polylog has the sign of z") {
  for (double s : {-0.5, 0.5, 3.0}) {
    CHECK(polylog(s, -0.7) < 0.0);
    CHECK(polylog(s, 0.7) > 0.0);
  }
  CHECK(polylog(1.5, 0.0) == 0.0);
}

TEST_CASE("polylog rejects arguments outside the unit disc and low orders") {
  CHECK_THROWS_AS(polylog(1.5, 1.0), thermoflow::DomainError);
  CHECK_THROWS_AS(polylog(1.5, -1.2), thermoflow::DomainError);
  CHECK_THROWS_AS(polylog(-1.0, 0.5), thermoflow::DomainError);
  CHECK_THROWS_AS(polylog(1.5, 0.9999, {1e-12, 100}), thermoflow::ConvergenceError);
}

TEST_CASE("gamma function values and recurrence") {
  const double root_pi = std::sqrt(std::numbers::pi);
  CHECK(sf::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sf::gamma(1.5) == doctest::Approx(root_pi / 2).epsilon(1e-14));
  CHECK(sf::gamma(3.5) == doctest::Approx(2.5 * 1.5 * root_pi / 2).epsilon(1e-14));
  for (double x = 0.25; x < 4.0; x += 0.125) {
    CHECK(std::abs(sf::gamma(x + 1) - x * sf::gamma(x)) <= 1e-12 * sf::gamma(x + 1));
  }
  CHECK_THROWS_AS(sf::gamma(0.0), thermoflow::DomainError);
  CHECK_THROWS_AS(sf::gamma(-1.5), thermoflow::DomainError);
}
