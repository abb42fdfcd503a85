// Copyright 2026 The redsim Authors
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

namespace redsim {

// Floating-point policy shared by every validity check in the library.
inline constexpr double kEpsHerm = 1e-10;
inline constexpr double kEpsEig = 1e-9;

// Dense 2^12 x 2^12 operators are the ceiling for this simulator.
inline constexpr int kMaxQubits = 12;

// Raised when an operation is called outside its documented domain.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when reading or writing an external file fails.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ArgumentError(message);
}

}  // namespace detail
}  // namespace redsim
