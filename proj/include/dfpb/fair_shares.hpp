// Copyright 2026 The Authors.
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

#include <vector>

#include "dfpb/core.hpp"
#include "dfpb/rational.hpp"

namespace dfpb {

// A district's fair share: the best utility it could reach spending
// only its own slice of the budget (a 0/1 knapsack over all projects
// with cost cap floor(budget_share)).  The witness is the
// lexicographically smallest optimal set.
DistrictShare ComputeFairShare(const Instance& instance, int district);

// Optionally overrides the per-district cost caps (used by the scaled
// solver); caps are floored to integers internally.
DistrictShare ComputeFairShare(const Instance& instance, int district,
                               const Rational& budget_cap);

FairShareProfile ComputeFairShares(const Instance& instance);

// Knapsack with a side constraint: maximize total project welfare
// subject to the cost cap AND a lower bound on a per-project rational
// "cover weight" sum.  This is the oracle the lottery engine queries
// with blended district demands.
struct CoverKnapsackQuery {
  long long cost_cap = 0;
  std::vector<Rational> cover_weights;  // one weight per project
  Rational cover_threshold = 0;         // required sum over chosen projects
};

struct CoverKnapsackResult {
  Outcome outcome;       // lexicographically smallest optimum
  long long welfare = 0;  // total welfare achieved
};

// Exact dynamic program over (cost, achieved welfare) with big-integer
// cover sums; throws InfeasibleError when no subset meets the cover
// threshold within the cap, CapabilityError when the table would not
// fit in memory.
CoverKnapsackResult SolveCoverKnapsack(const Instance& instance,
                                       const CoverKnapsackQuery& query);

// Max total welfare over budget-feasible outcomes, ignoring fairness.
long long MaxFeasibleWelfare(const Instance& instance);

}  // namespace dfpb
