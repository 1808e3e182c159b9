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

#ifndef THERMOFLOW_SPECFUN_HPP
#define THERMOFLOW_SPECFUN_HPP

namespace thermoflow::specfun {

/// Stopping rule for series evaluation.
struct EvalSettings {
  double tol = 1e-12;   ///< relative tolerance on the truncated tail
  long max_terms = 1'000'000;
};

/// Smallest polylogarithm order the library accepts.
inline constexpr double kMinPolylogOrder = -0.5;

/// Real polylogarithm Li_s(z) = sum_{k>=1} z^k / k^s for |z| < 1, s >= -1/2.
///
/// Summed directly with Kahan compensation. The loop stops once the
/// geometric bound on the remaining tail drops below tol * |partial sum|.
/// Throws DomainError outside the domain and ConvergenceError when
/// max_terms runs out first (|z| very close to 1).
double polylog(double s, double z, const EvalSettings& settings = {});

/// Gamma function for x > 0. Throws DomainError otherwise.
double gamma(double x);

}  // namespace thermoflow::specfun

#endif  // THERMOFLOW_SPECFUN_HPP
