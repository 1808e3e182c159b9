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

#ifndef THERMOFLOW_TESTS_SUPPORT_ORACLES_HPP
#define THERMOFLOW_TESTS_SUPPORT_ORACLES_HPP

#include <algorithm>
#include <array>
#include <cmath>

#include "thermoflow/systems.hpp"

namespace thermoflow::testing {

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Central differences of ψ in the η chart with per-axis steps.
class PotentialFd {
 public:
  PotentialFd(const ThermoSystem& system, std::array<double, 2> step)
      : system_(system), h_(step) {}

  double psi(const State& s, double d0, double d1) const {
    return system_.potential({s.T + d0, s.eta2 + d1});
  }

  std::array<double, 2> gradient(const State& s) const {
    return {(psi(s, h_[0], 0) - psi(s, -h_[0], 0)) / (2 * h_[0]),
            (psi(s, 0, h_[1]) - psi(s, 0, -h_[1])) / (2 * h_[1])};
  }

  // Richardson-extrapolated (steps h and 2h) versions of the stencils below.
  std::array<double, 3> hessian(const State& s) const {
    return extrapolate(PotentialFd(system_, h_).hessian_raw(s),
                       PotentialFd(system_, {2 * h_[0], 2 * h_[1]}).hessian_raw(s));
  }
  std::array<double, 4> third(const State& s) const {
    return extrapolate(PotentialFd(system_, h_).third_raw(s),
                       PotentialFd(system_, {2 * h_[0], 2 * h_[1]}).third_raw(s));
  }

  // Returns (g00, g01, g11).
  std::array<double, 3> hessian_raw(const State& s) const {
    const double f = psi(s, 0, 0);
    const double g00 = (psi(s, h_[0], 0) - 2 * f + psi(s, -h_[0], 0)) / (h_[0] * h_[0]);
    const double g11 = (psi(s, 0, h_[1]) - 2 * f + psi(s, 0, -h_[1])) / (h_[1] * h_[1]);
    const double g01 = (psi(s, h_[0], h_[1]) - psi(s, h_[0], -h_[1]) - psi(s, -h_[0], h_[1]) +
                        psi(s, -h_[0], -h_[1])) /
                       (4 * h_[0] * h_[1]);
    return {g00, g01, g11};
  }

  // Returns (∂³ψ/∂η₀³, ∂³ψ/∂η₀²∂η₁, ∂³ψ/∂η₀∂η₁², ∂³ψ/∂η₁³).
  std::array<double, 4> third_raw(const State& s) const {
    const double a = h_[0];
    const double b = h_[1];
    auto pure = [&](int axis) {
      const double h = h_[axis];
      auto f = [&](double d) { return axis == 0 ? psi(s, d, 0) : psi(s, 0, d); };
      return (f(2 * h) - 2 * f(h) + 2 * f(-h) - f(-2 * h)) / (2 * h * h * h);
    };
    auto d00 = [&](double d1) {
      return (psi(s, a, d1) - 2 * psi(s, 0, d1) + psi(s, -a, d1)) / (a * a);
    };
    auto d11 = [&](double d0) {
      return (psi(s, d0, b) - 2 * psi(s, d0, 0) + psi(s, d0, -b)) / (b * b);
    };
    return {pure(0), (d00(b) - d00(-b)) / (2 * b), (d11(a) - d11(-a)) / (2 * a), pure(1)};
  }

 private:
  template <std::size_t N>
  static std::array<double, N> extrapolate(const std::array<double, N>& fine,
                                           const std::array<double, N>& coarse) {
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = (4 * fine[i] - coarse[i]) / 3;
    return out;
  }

  const ThermoSystem& system_;
  std::array<double, 2> h_;
};

}  // namespace thermoflow::testing

#endif  // THERMOFLOW_TESTS_SUPPORT_ORACLES_HPP
