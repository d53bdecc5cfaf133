// Copyright 2026 The pstlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace pstlab {

/// Malformed user input: labels, configs, out-of-range parameters.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

class ParseError : public InputError {
  public:
    ParseError(const std::string &msg, std::size_t position)
        : InputError(msg), position_(position) {}

    std::size_t position() const { return position_; }

  private:
    std::size_t position_;
};

/// Operands whose qubit counts or matrix shapes disagree.
class DimensionError : public InputError {
  public:
    using InputError::InputError;
};

/// Requested qubit count exceeds the configured resource bound.
class ResourceError : public InputError {
  public:
    using InputError::InputError;
};

/// Failure inside a numerical routine (non-finite data, branch cut, no convergence).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class BranchCutError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Largest qubit count any dense construction accepts. PSTLAB_MAX_QUBITS overrides the default of 4.
inline int max_qubits() {
    constexpr int kDefault = 4;
    const char *env = std::getenv("PSTLAB_MAX_QUBITS");
    if (env == nullptr || *env == '\0') {
        return kDefault;
    }
    char *end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 12) {
        throw InputError("PSTLAB_MAX_QUBITS must be an integer in [1, 12], got '" + std::string(env) +
                         "'");
    }
    return static_cast<int>(v);
}

inline void require_qubits_within_bound(int n) {
    if (n < 1) {
        throw InputError("qubit count must be positive, got " + std::to_string(n));
    }
    const int bound = max_qubits();
    if (n > bound) {
        throw ResourceError("qubit count " + std::to_string(n) + " exceeds resource bound " +
                            std::to_string(bound) + " (set PSTLAB_MAX_QUBITS to raise it)");
    }
}

}  // namespace pstlab
