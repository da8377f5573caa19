// Copyright 2026 The cqs Authors
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

#include <stdexcept>
#include <string>

namespace cqs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input document (JSON, bitstring, label text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input violates a type invariant (duplicate label, dim < 1, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Matrix or register dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Generator arities do not line up in a cobordism word.
class ArityError : public Error {
 public:
  using Error::Error;
};

}  // namespace cqs
