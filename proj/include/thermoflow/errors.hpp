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

#ifndef THERMOFLOW_ERRORS_HPP
#define THERMOFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace thermoflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of the operation (T <= 0, |z| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative evaluation exhausted its budget before meeting its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// The metric is too ill-conditioned to invert reliably.
class SingularMetricError : public Error {
 public:
  using Error::Error;
};

/// A sampled curve or trajectory is too coarse for the requested quadrature.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// An integrator step left the valid chart.
class StepError : public Error {
 public:
  using Error::Error;
};

/// A root bracket does not straddle the target value.
class BracketError : public Error {
 public:
  using Error::Error;
};

/// A time grid does not contain the feature being searched for.
class GridError : public Error {
 public:
  using Error::Error;
};

}  // namespace thermoflow

#endif  // THERMOFLOW_ERRORS_HPP
