// Copyright 2026 The qscissors Authors
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

#ifndef QSCISSORS_ERRORS_HPP
#define QSCISSORS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qscissors {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown, duplicated or overlapping mode labels; mismatched registers.
class RegisterError : public Error {
 public:
  using Error::Error;
};

/// A beam splitter, detector or state that violates a physical constraint.
class PhysicalityError : public Error {
 public:
  using Error::Error;
};

/// Truncated Fock space too small for the requested operation.
class CutoffError : public Error {
 public:
  CutoffError(const std::string& what, int required_cutoff)
      : Error(what), required_cutoff_(required_cutoff) {}
  explicit CutoffError(const std::string& what) : Error(what) {}

  /// Smallest cutoff that would have satisfied the request, or -1 if unknown.
  int required_cutoff() const noexcept { return required_cutoff_; }

 private:
  int required_cutoff_ = -1;
};

/// Post-selection on an outcome whose probability is numerically zero.
class ImpossibleOutcome : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-range run configuration. The message starts with the
/// offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace qscissors

#endif  // QSCISSORS_ERRORS_HPP
