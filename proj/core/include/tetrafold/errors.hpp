// Copyright 2026 The Tetrafold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace tetrafold {

/// Input rejected before any work was done (bad residue, size mismatch,
/// out-of-range config). The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A conformation with overlapping beads was passed where a
/// self-avoiding one is required.
class InfeasibleConformation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Statevector simulation refused because the instance exceeds the qubit cap.
class CapExceeded : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

/// alpha1 denominator vanished (e.g. H_f commutes with the driver).
class DegenerateInstance : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// The consensus pipeline could not collect a single feasible geometry.
class PoolExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace tetrafold
