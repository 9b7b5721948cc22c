// Copyright 2026 The gyroqfi Authors.
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

#ifndef GYROQFI_ERRORS_HPP
#define GYROQFI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gyroqfi {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Probabilities or traces that fail to close.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

class CalibrationError : public Error {
 public:
  using Error::Error;
};

/// The requested truncation leaves too much norm outside the basis.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Input lacks the structure a fast path relies on (use the generic path).
class UnsupportedStructureError : public Error {
 public:
  using Error::Error;
};

class NoFormulaError : public Error {
 public:
  using Error::Error;
};

class InvalidDensityError : public Error {
 public:
  using Error::Error;
};

class NoInformationError : public Error {
 public:
  using Error::Error;
};

class SizeError : public Error {
 public:
  using Error::Error;
};

class UndefinedQError : public Error {
 public:
  using Error::Error;
};

}  // namespace gyroqfi

#endif  // GYROQFI_ERRORS_HPP
