// Copyright 2026 The kuhncheat Authors.
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

namespace kuhncheat {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A profile does not define a distribution at an information set that the
// operation needs.
class CoverageError : public Error {
 public:
  using Error::Error;
};

// Operation applied to a tree that does not have the required structure.
class UnsupportedVariantError : public Error {
 public:
  using Error::Error;
};

class WrongVariantError : public Error {
 public:
  using Error::Error;
};

class InvalidFlagsError : public Error {
 public:
  using Error::Error;
};

// Parameter outside its documented range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Enumeration would exceed the configured size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Raised when a solver reaches a state that a well-formed zero-sum game
// cannot produce (infeasible or unbounded LP, failed duality check).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace kuhncheat
