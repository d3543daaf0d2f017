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

#include <string>
#include <vector>

#include "dfpb/rational.hpp"

namespace dfpb {

// Instances stay small enough that every welfare / cost aggregate fits
// comfortably in 64 bits; ValidateInstance enforces these caps.
inline constexpr long long kMaxTotalCost = 1'000'000'000;
inline constexpr long long kMaxTotalUtility = 1'000'000'000;

struct Project {
  int id = 0;            // dense index, 0-based
  long long cost = 0;    // nonnegative integer cost
  std::string label;     // unique human-readable name
};

struct District {
  int id = 0;  // dense index, 0-based
  // Exact slice of the global budget; shares sum to the budget.
  Rational budget_share = 0;
  // utilities[j] = this district's utility for project j (>= 0).
  std::vector<long long> utilities;
  std::string label;
};

// A participatory-budgeting instance: a global integer budget, projects
// with integer costs, and districts holding exact budget shares and
// integer utilities over all projects.  Instances are built by the
// loaders / generators, passed through ValidateInstance once, and
// treated as immutable afterwards.
struct Instance {
  long long budget = 0;
  std::vector<Project> projects;
  std::vector<District> districts;

  int num_projects() const { return static_cast<int>(projects.size()); }
  int num_districts() const { return static_cast<int>(districts.size()); }
};

// A deterministic outcome: a set of funded projects, stored as sorted
// unique 0-based ids.
struct Outcome {
  std::vector<int> members;

  bool contains(int project) const;
  bool operator==(const Outcome& other) const = default;
};

// Sorts, dedupes and returns the canonical representation.
Outcome MakeOutcome(std::vector<int> members);

// Strict "smaller sorted member list" order: lexicographic over the
// sorted id sequences, with a proper prefix ordered first.
bool OutcomeLess(const Outcome& a, const Outcome& b);

// One fraction in [0, 1] per project; the relaxation used by residuals
// and the fractional-fairness lab.
struct FractionalOutcome {
  std::vector<Rational> fractions;
};

struct LotteryEntry {
  Outcome outcome;
  Rational probability;  // exact, in (0, 1]
};

// A randomized outcome: entries with exact probabilities summing to 1.
struct Lottery {
  std::vector<LotteryEntry> entries;
};

// Per-district fair share: the guarantee value plus a witness set
// achieving it within the district's own budget slice.
struct DistrictShare {
  long long value = 0;
  Outcome witness;
};

struct FairShareProfile {
  std::vector<DistrictShare> shares;

  long long value(int district) const { return shares[district].value; }
  const Outcome& witness(int district) const {
    return shares[district].witness;
  }
};

// --- Aggregates ------------------------------------------------------

long long Cost(const Instance& instance, const Outcome& outcome);
long long Welfare(const Instance& instance, int district,
                  const Outcome& outcome);
long long TotalWelfare(const Instance& instance, const Outcome& outcome);

// Utility of the district's best project outside the outcome, or 0 when
// every project is funded.
long long BestUnfundedUtility(const Instance& instance, int district,
                              const Outcome& outcome);

Rational FractionalCost(const Instance& instance,
                        const FractionalOutcome& outcome);
Rational FractionalWelfare(const Instance& instance, int district,
                           const FractionalOutcome& outcome);

// --- Predicates ------------------------------------------------------

bool IsBudgetFeasible(const Instance& instance, const Outcome& outcome);

// Every district meets its fair share outright.
bool IsDistrictFair(const Instance& instance, const FairShareProfile& shares,
                    const Outcome& outcome);

// Every district meets its fair share after adding its single best
// unfunded project (districts with no unfunded project get no boost).
bool IsDistrictFairUpToOne(const Instance& instance,
                           const FairShareProfile& shares,
                           const Outcome& outcome);

// --- Validation ------------------------------------------------------

// Throws ValidationError unless: budget >= 1; costs and utilities are
// nonnegative; labels are unique and nonempty; every district scores
// every project; budget shares are nonnegative and sum exactly to the
// budget; total cost and every district's total utility stay within the
// 1e9 caps above.
void ValidateInstance(const Instance& instance);

// Throws ValidationError unless members are sorted, unique, in range.
void ValidateOutcome(const Instance& instance, const Outcome& outcome);

// Throws ValidationError unless every entry is a valid outcome with
// probability in (0, 1] and probabilities sum exactly to 1.
void ValidateLottery(const Instance& instance, const Lottery& lottery);

// Throws ValidationError unless every fraction lies in [0, 1] and the
// vector length matches the project count.
void ValidateFractionalOutcome(const Instance& instance,
                               const FractionalOutcome& outcome);

}  // namespace dfpb
