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

#include "dfpb/exact_solver.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

// State key: [prefix j, remaining budget, clamped demand per district].
struct StateHash {
  std::size_t operator()(const std::vector<long long>& key) const {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (long long v : key) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

constexpr long long kImpossible = -1;

class DemandDp {
 public:
  DemandDp(const Instance& instance, const FairShareProfile& shares)
      : instance_(instance), k_(instance.num_districts()) {
    const int m = instance.num_projects();
    total_utility_.resize(m, 0);
    for (int j = 0; j < m; ++j) {
      for (const District& d : instance.districts) {
        total_utility_[j] += d.utilities[j];
      }
    }
    root_demands_.reserve(k_);
    for (int i = 0; i < k_; ++i) root_demands_.push_back(shares.value(i));
  }

  // Max welfare of a subset of projects j.. within `budget` that gives
  // every district at least its demanded welfare; kImpossible if none.
  long long Best(int j, long long budget, std::vector<long long>& demands) {
    const int m = instance_.num_projects();
    if (j == m) {
      return std::all_of(demands.begin(), demands.end(),
                         [](long long d) { return d == 0; })
                 ? 0
                 : kImpossible;
    }
    key_.clear();
    key_.push_back(j);
    key_.push_back(budget);
    key_.insert(key_.end(), demands.begin(), demands.end());
    if (const auto it = memo_.find(key_); it != memo_.end()) {
      return it->second;
    }
    const std::vector<long long> saved_key = key_;

    long long best = Best(j + 1, budget, demands);  // skip project j
    const long long cost = instance_.projects[j].cost;
    if (cost <= budget) {
      std::vector<long long> reduced(demands);
      ReduceDemands(j, reduced);
      const long long with = Best(j + 1, budget - cost, reduced);
      if (with != kImpossible) {
        best = std::max(best, total_utility_[j] + with);
      }
    }
    memo_.emplace(saved_key, best);
    return best;
  }

  Outcome Reconstruct(long long budget) {
    std::vector<long long> demands = root_demands_;
    const long long target = Best(0, budget, demands);
    Outcome outcome;
    long long remaining = target;
    for (int j = 0; j < instance_.num_projects(); ++j) {
      const bool met = std::all_of(demands.begin(), demands.end(),
                                   [](long long d) { return d == 0; });
      if (met && remaining == 0) break;  // prefix alone is optimal
      const long long cost = instance_.projects[j].cost;
      if (cost <= budget) {
        std::vector<long long> reduced(demands);
        ReduceDemands(j, reduced);
        const long long with = Best(j + 1, budget - cost, reduced);
        if (with != kImpossible && total_utility_[j] + with == remaining) {
          outcome.members.push_back(j);
          demands = reduced;
          budget -= cost;
          remaining -= total_utility_[j];
          continue;
        }
      }
    }
    return outcome;
  }

 private:
  void ReduceDemands(int j, std::vector<long long>& demands) const {
    for (int i = 0; i < k_; ++i) {
      demands[i] =
          std::max(0LL, demands[i] - instance_.districts[i].utilities[j]);
    }
  }

  const Instance& instance_;
  const int k_;
  std::vector<long long> total_utility_;
  std::vector<long long> root_demands_;
  std::vector<long long> key_;
  std::unordered_map<std::vector<long long>, long long, StateHash> memo_;
};

// Incremental per-subset bookkeeping for the Gray-code enumerators.
struct EnumerationState {
  long long cost = 0;
  long long welfare = 0;
  std::vector<long long> district_welfare;
  int unsatisfied = 0;  // districts below their fair share

  EnumerationState(const Instance& instance, const FairShareProfile& shares)
      : district_welfare(instance.num_districts(), 0) {
    for (int i = 0; i < instance.num_districts(); ++i) {
      if (shares.value(i) > 0) ++unsatisfied;
    }
  }

  void Flip(const Instance& instance, const FairShareProfile& shares, int j,
            bool insert) {
    const long long sign = insert ? 1 : -1;
    cost += sign * instance.projects[j].cost;
    for (int i = 0; i < instance.num_districts(); ++i) {
      const long long u = instance.districts[i].utilities[j];
      if (u == 0) continue;
      const long long before = district_welfare[i];
      district_welfare[i] += sign * u;
      welfare += sign * u;
      const long long f = shares.value(i);
      if (before < f && district_welfare[i] >= f) --unsatisfied;
      if (before >= f && district_welfare[i] < f) ++unsatisfied;
    }
  }
};

std::vector<int> MaskMembers(std::uint32_t mask) {
  std::vector<int> members;
  for (int j = 0; mask != 0; ++j, mask >>= 1) {
    if (mask & 1u) members.push_back(j);
  }
  return members;
}

void GuardOracleSize(const Instance& instance) {
  if (instance.num_projects() > kOracleProjectLimit) {
    throw CapabilityError(
        "subset enumeration supports at most " +
        std::to_string(kOracleProjectLimit) + " projects, got " +
        std::to_string(instance.num_projects()));
  }
}

}  // namespace

Outcome SolveExactDp(const Instance& instance, const FairShareProfile& shares,
                     int district_limit) {
  if (instance.num_districts() > district_limit) {
    throw CapabilityError(
        "exact solver supports at most " + std::to_string(district_limit) +
        " districts (got " + std::to_string(instance.num_districts()) +
        "); use the lottery or the coverage pipeline instead");
  }
  DemandDp dp(instance, shares);
  return dp.Reconstruct(instance.budget);
}

OracleResult OracleSolve(const Instance& instance,
                         const FairShareProfile& shares) {
  GuardOracleSize(instance);
  const int m = instance.num_projects();
  EnumerationState state(instance, shares);

  OracleResult result;
  result.opt_welfare = -1;
  std::uint32_t mask = 0;
  const std::uint64_t subsets = 1ULL << m;
  for (std::uint64_t index = 0;; ++index) {
    if (state.cost <= instance.budget && state.unsatisfied == 0) {
      ++result.fair_outcome_count;
      if (state.welfare > result.opt_welfare) {
        result.opt_welfare = state.welfare;
        result.witness = Outcome{MaskMembers(mask)};
      } else if (state.welfare == result.opt_welfare) {
        Outcome candidate{MaskMembers(mask)};
        if (OutcomeLess(candidate, result.witness)) {
          result.witness = std::move(candidate);
        }
      }
    }
    if (index + 1 == subsets) break;
    // Gray code: subset at rank r is r ^ (r >> 1), so exactly one
    // project flips between consecutive ranks.
    const std::uint32_t next = static_cast<std::uint32_t>(
        (index + 1) ^ ((index + 1) >> 1));
    const std::uint32_t flipped = mask ^ next;
    const int j = std::countr_zero(flipped);
    state.Flip(instance, shares, j, (next & flipped) != 0);
    mask = next;
  }
  return result;
}

long long OracleDf1Frontier(const Instance& instance,
                            const FairShareProfile& shares) {
  GuardOracleSize(instance);
  const int m = instance.num_projects();
  EnumerationState state(instance, shares);

  const auto fair_up_to_one = [&](std::uint32_t mask) {
    for (int i = 0; i < instance.num_districts(); ++i) {
      const long long have = state.district_welfare[i];
      const long long f = shares.value(i);
      if (have >= f) continue;
      long long best_unfunded = 0;
      const auto& utilities = instance.districts[i].utilities;
      for (int j = 0; j < m; ++j) {
        if ((mask & (1u << j)) == 0) {
          best_unfunded = std::max(best_unfunded, utilities[j]);
        }
      }
      if (have + best_unfunded < f) return false;
    }
    return true;
  };

  long long frontier = -1;
  std::uint32_t mask = 0;
  const std::uint64_t subsets = 1ULL << m;
  for (std::uint64_t index = 0;; ++index) {
    if (state.cost <= instance.budget && state.welfare > frontier &&
        fair_up_to_one(mask)) {
      frontier = state.welfare;
    }
    if (index + 1 == subsets) break;
    const std::uint32_t next = static_cast<std::uint32_t>(
        (index + 1) ^ ((index + 1) >> 1));
    const std::uint32_t flipped = mask ^ next;
    const int j = std::countr_zero(flipped);
    state.Flip(instance, shares, j, (next & flipped) != 0);
    mask = next;
  }
  return frontier;
}

}  // namespace dfpb
