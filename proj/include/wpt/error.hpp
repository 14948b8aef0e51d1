// SPDX-License-Identifier: Apache-2.0
//
// wptopt - optimal transmit antenna deployment for indoor wireless power transfer
// Copyright (C) 2026 The wptopt authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef WPT_ERROR_HPP
#define WPT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wpt {

// Invalid arguments, violated preconditions and malformed configuration.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An optimization routine failed to reach its tolerance within the iteration cap.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Factorization or other linear-algebra failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace detail
}  // namespace wpt

#endif  // WPT_ERROR_HPP
