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

#ifndef THERMOFLOW_CLI_HPP
#define THERMOFLOW_CLI_HPP

#include <iosfwd>
#include <string>

namespace thermoflow::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kBoundViolation = 1,
  kUsageError = 2,
  kDomainFailure = 3,
  kNumericalFailure = 4,
  kIoFailure = 5,
};

/// Shortest decimal text that reads back to the same double; "nan", "inf"
/// and "-inf" for non-finite values.
std::string format_real(double value);

/// Entry point behind the `thermoflow` executable.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thermoflow::cli

#endif  // THERMOFLOW_CLI_HPP
