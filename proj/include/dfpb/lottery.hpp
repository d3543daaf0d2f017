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

#include <optional>
#include <vector>

#include "dfpb/core.hpp"
#include "dfpb/fair_shares.hpp"

namespace dfpb {

// How to bound the per-iteration welfare range: the welfare of funding
// every project (safe, default) or the budget-feasible maximum
// (smaller, so fewer iterations).
enum class SwMaxMode { kAllProjects, kFeasibleKnapsack };

struct MwConfig {
  Rational epsilon;  // > 0; the fairness slack of the produced lottery
  std::optional<long long> iteration_override;
  SwMaxMode sw_max_mode = SwMaxMode::kAllProjects;
};

struct MwIteration {
  std::vector<double> weights;        // as entering this iteration
  std::vector<Rational> proportions;  // exact, sum exactly 1
  Rational blended_threshold;
  Outcome chosen;
  std::vector<long long> mistakes;  // district welfare minus fair share
};

struct MwTrace {
  Rational epsilon;
  long long sw_max = 0;
  long long iterations = 0;
  std::vector<MwIteration> steps;
};

// Builds the single blended district's constraint: cover_weights_j =
// Σ_i proportions_i · utility_i(j), threshold = Σ_i proportions_i ·
// fair_share_i, cap = the full budget.
CoverKnapsackQuery BlendDistricts(const Instance& instance,
                                  const FairShareProfile& shares,
                                  const std::vector<Rational>& proportions);

// Multiplicative-weights lottery.  Runs T = ceil(4·ln k·sw_max²/ε²)
// iterations (at least 1); each iteration solves a welfare-max
// knapsack that is fair for the weight-blended district, then
// downweights districts that got more than their share.  The uniform
// distribution over the iteration outcomes (identical outcomes merged)
// is returned with its full trace.
//
// Guarantees: every support outcome is budget-feasible with welfare at
// least the fair optimum (ex post); expected district welfare is at
// least fair share minus epsilon (ex ante).
//
// Weight dynamics run in floating point with normalized losses
// (mistake/sw_max) at rate min(ε/(2·sw_max), 1/2); proportions are
// converted to exact rationals before entering the knapsack, so every
// fairness comparison stays exact.  Fully deterministic.
std::pair<Lottery, MwTrace> RunMwLottery(const Instance& instance,
                                         const FairShareProfile& shares,
                                         const MwConfig& config);

struct RegretReport {
  // (1/T) Σ_t (blended welfare of W_t − blended threshold); ≥ 0
  // because every W_t is fair for its blend.
  Rational average_blend_gain;
  // Per district: (1/T) Σ_t mistake_i.
  std::vector<Rational> average_mistake;
  // min_i (ε + average_mistake_i − average_blend_gain); the regret
  // inequality holds iff this is ≥ 0.
  Rational worst_slack;
  bool inequality_holds = false;
};

// Verifies the regret inequality average_blend_gain ≤ ε +
// average_mistake_i for every district, with exact arithmetic over the
// recorded trace.
RegretReport MwRegretCheck(const MwTrace& trace);

}  // namespace dfpb
