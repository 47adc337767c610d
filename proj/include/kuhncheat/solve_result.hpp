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

#include <cstddef>
#include <string>
#include <string_view>

#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"

namespace kuhncheat {

enum class Method { Lp, Cfr, NormalForm };

constexpr std::string_view to_string(Method method) {
  switch (method) {
    case Method::Lp: return "lp";
    case Method::Cfr: return "cfr";
    case Method::NormalForm: return "normal-form";
  }
  return "?";
}

template <class Scalar>
struct BasicSolveResult {
  Scalar value;  // to player 1
  BasicBehaviorProfile<Scalar> profile;
  Scalar exploitability;
  Method method = Method::Lp;
  std::size_t iterations = 0;  // simplex pivots or CFR iterations
};

using SolveResult = BasicSolveResult<Rational>;

}  // namespace kuhncheat
