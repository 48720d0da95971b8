// Copyright 2026 The sk1 Authors
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

#ifndef SK1_ERRORS_HPP
#define SK1_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sk1 {

// Numeric values double as CLI exit codes.
enum class ErrorKind {
  Parse = 2,
  Contract = 3,
  Verification = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Malformed input files or unparseable values.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

/// A mathematical precondition does not hold (bound violated, non-unit, mixed backends, ...).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ErrorKind::Contract, what) {}
};

/// An independent re-multiplication disagreed with the claimed result.
class VerificationError : public Error {
 public:
  explicit VerificationError(const std::string& what) : Error(ErrorKind::Verification, what) {}
};

}  // namespace sk1

#endif  // SK1_ERRORS_HPP
