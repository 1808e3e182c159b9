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

#include "thermoflow/specfun.hpp"

#include <cmath>
#include <string>

#include "thermoflow/errors.hpp"

namespace thermoflow::specfun {

double polylog(double s, double z, const EvalSettings& settings) {
  if (!std::isfinite(s) || s < kMinPolylogOrder) {
    throw DomainError("polylog: order " + std::to_string(s) + " below -1/2");
  }
  if (!std::isfinite(z) || std::abs(z) >= 1.0) {
    throw DomainError("polylog: |z| must be < 1, got " + std::to_string(z));
  }
  if (!(settings.tol > 0.0 && settings.tol < 1.0) || settings.max_terms < 1) {
    throw DomainError("polylog: invalid evaluation settings");
  }
  if (z == 0.0) return 0.0;

  double sum = 0.0;
  double carry = 0.0;
  double power = 1.0;  // z^k
  double prev_mag = 0.0;
  for (long k = 1; k <= settings.max_terms; ++k) {
    power *= z;
    const double term = power / std::pow(static_cast<double>(k), s);
    const double y = term - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;

    const double mag = std::abs(term);
    if (k > 1) {
      // Bound on all later term ratios: |z| for s >= 0; for s < 0 the ratio
      // decreases towards |z|, so the current one bounds the rest.
      const double ratio = s >= 0.0 ? std::abs(z) : mag / prev_mag;
      if (ratio < 1.0) {
        const double tail = mag * ratio / (1.0 - ratio);
        if (tail <= settings.tol * std::abs(sum) || (sum == 0.0 && tail < settings.tol)) {
          return sum;
        }
      }
    }
    prev_mag = mag;
  }
  throw ConvergenceError("polylog: no convergence within " +
                         std::to_string(settings.max_terms) + " terms (s=" + std::to_string(s) +
                         ", z=" + std::to_string(z) + ")");
}

double gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("gamma: argument must be positive and finite");
  }
  return std::tgamma(x);
}

}  // namespace thermoflow::specfun
