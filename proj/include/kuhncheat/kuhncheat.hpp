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

// Umbrella header.

#include "kuhncheat/analytic.hpp"
#include "kuhncheat/best_response.hpp"
#include "kuhncheat/cfr.hpp"
#include "kuhncheat/efg.hpp"
#include "kuhncheat/errors.hpp"
#include "kuhncheat/evaluate.hpp"
#include "kuhncheat/gametree.hpp"
#include "kuhncheat/kuhn.hpp"
#include "kuhncheat/normal_form.hpp"
#include "kuhncheat/profile.hpp"
#include "kuhncheat/rational.hpp"
#include "kuhncheat/sequence_form.hpp"
#include "kuhncheat/simplex.hpp"
#include "kuhncheat/solve_result.hpp"
#include "kuhncheat/sweep.hpp"
