// satadapt/satadapt/error.h

// Copyright 2026  The satadapt Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef SATADAPT_ERROR_H_
#define SATADAPT_ERROR_H_

#include <stdexcept>
#include <string>

namespace satadapt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Dimension disagreement between operands, layers or files.
class ShapeError : public Error {
 public:
  explicit ShapeError(const std::string &what) : Error(what) {}
};

/// NaN or Inf encountered where finite values are required.
class NonFiniteError : public Error {
 public:
  explicit NonFiniteError(const std::string &what) : Error(what) {}
};

/// Violation of a frozen-parameter contract.
class FrozenError : public Error {
 public:
  explicit FrozenError(const std::string &what) : Error(what) {}
};

/// Malformed, truncated or mismatched binary/text file.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &what) : Error(what) {}
};

/// Invalid configuration or argument value.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string &what) : Error(what) {}
};

/// Operation called in the wrong order or state.
class UsageError : public Error {
 public:
  explicit UsageError(const std::string &what) : Error(what) {}
};

/// File could not be opened, read or written.
class IoError : public Error {
 public:
  explicit IoError(const std::string &what) : Error(what) {}
};

}  // namespace satadapt

#endif  // SATADAPT_ERROR_H_
