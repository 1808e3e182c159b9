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

#ifndef THERMOFLOW_TENSOR_HPP
#define THERMOFLOW_TENSOR_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace thermoflow {

/// Components of a vector or covector on the two-dimensional chart.
using Vec2 = std::array<double, 2>;

inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2 operator*(double s, const Vec2& a) { return {s * a[0], s * a[1]}; }

/// Symmetric rank-2 coefficients over a 2-D chart, stored as (00, 01, 11).
class SymTensor2 {
 public:
  constexpr SymTensor2() = default;
  constexpr SymTensor2(double c00, double c01, double c11) : c_{c00, c01, c11} {}

  constexpr double operator()(std::size_t i, std::size_t j) const { return c_[i + j]; }

  double contract(const Vec2& u, const Vec2& v) const {
    return c_[0] * u[0] * v[0] + c_[1] * (u[0] * v[1] + u[1] * v[0]) + c_[2] * u[1] * v[1];
  }
  double quadratic(const Vec2& v) const { return contract(v, v); }

  Vec2 apply(const Vec2& v) const {
    return {c_[0] * v[0] + c_[1] * v[1], c_[1] * v[0] + c_[2] * v[1]};
  }

  double trace() const { return c_[0] + c_[2]; }
  double determinant() const { return c_[0] * c_[2] - c_[1] * c_[1]; }

  /// Eigenvalues in ascending order.
  std::array<double, 2> eigenvalues() const {
    const double mean = 0.5 * (c_[0] + c_[2]);
    const double half_diff = 0.5 * (c_[0] - c_[2]);
    const double radius = std::hypot(half_diff, c_[1]);
    const double hi = mean + (mean >= 0 ? radius : -radius);
    // Smaller root from the determinant avoids cancellation when one is tiny.
    const double lo = hi != 0.0 ? determinant() / hi : 0.0;
    return hi >= lo ? std::array<double, 2>{lo, hi} : std::array<double, 2>{hi, lo};
  }

  /// Ratio of largest to smallest |eigenvalue|; infinite for singular tensors.
  double condition_number() const {
    const auto ev = eigenvalues();
    const double small = std::min(std::abs(ev[0]), std::abs(ev[1]));
    const double large = std::max(std::abs(ev[0]), std::abs(ev[1]));
    return small == 0.0 ? INFINITY : large / small;
  }

  SymTensor2 inverse() const {
    const double det = determinant();
    return {c_[2] / det, -c_[1] / det, c_[0] / det};
  }

  friend bool operator==(const SymTensor2&, const SymTensor2&) = default;

 private:
  std::array<double, 3> c_{};
};

/// Fully symmetric rank-3 coefficients over a 2-D chart. Only the four
/// independent components (000, 001, 011, 111) are stored, so every index
/// permutation reads the same memory.
class SymTensor3 {
 public:
  constexpr SymTensor3() = default;
  constexpr SymTensor3(double c000, double c001, double c011, double c111)
      : c_{c000, c001, c011, c111} {}

  constexpr double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[i + j + k];
  }

  double cubic(const Vec2& v) const {
    return c_[0] * v[0] * v[0] * v[0] + 3.0 * c_[1] * v[0] * v[0] * v[1] +
           3.0 * c_[2] * v[0] * v[1] * v[1] + c_[3] * v[1] * v[1] * v[1];
  }

  friend bool operator==(const SymTensor3&, const SymTensor3&) = default;

 private:
  std::array<double, 4> c_{};
};

}  // namespace thermoflow

#endif  // THERMOFLOW_TENSOR_HPP
