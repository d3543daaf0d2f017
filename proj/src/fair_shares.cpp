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

#include "dfpb/fair_shares.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

constexpr std::size_t kMaxKnapsackCells = 25'000'000;
constexpr std::size_t kMaxCoverCells = 4'000'000;

long long ClampCap(long long cap, long long total_cost) {
  return std::min(std::max(cap, 0LL), total_cost);
}

// Suffix-table 0/1 knapsack.  best[j][c] = max value over items j..m-1
// within capacity c; reconstruction then walks j upward preferring to
// stop as soon as the committed prefix already realizes the optimum and
// otherwise to include the current item when an optimal completion
// still exists.  That yields the lexicographically smallest optimal
// member list: stopping beats including (a proper prefix sorts first),
// and including beats deferring to any larger id.
struct KnapsackSolution {
  long long value = 0;
  Outcome outcome;
};

KnapsackSolution SolveKnapsack(const std::vector<long long>& values,
                               const std::vector<long long>& costs,
                               long long cap) {
  const int m = static_cast<int>(values.size());
  long long total_cost = 0;
  for (long long c : costs) total_cost += c;
  cap = ClampCap(cap, total_cost);

  const std::size_t width = static_cast<std::size_t>(cap) + 1;
  const std::size_t cells = width * static_cast<std::size_t>(m + 1);
  if (cells > kMaxKnapsackCells) {
    throw CapabilityError("knapsack table too large (" +
                          std::to_string(cells) + " cells)");
  }
  std::vector<long long> best(cells, 0);
  const auto at = [&](int j, long long c) -> long long& {
    return best[static_cast<std::size_t>(j) * width +
                static_cast<std::size_t>(c)];
  };
  for (int j = m - 1; j >= 0; --j) {
    for (long long c = 0; c <= cap; ++c) {
      long long v = at(j + 1, c);
      if (costs[j] <= c) {
        v = std::max(v, values[j] + at(j + 1, c - costs[j]));
      }
      at(j, c) = v;
    }
  }

  KnapsackSolution solution;
  solution.value = at(0, cap);
  long long need = solution.value;
  long long c = cap;
  for (int j = 0; j < m && need > 0; ++j) {
    if (costs[j] <= c && values[j] + at(j + 1, c - costs[j]) >= need) {
      solution.outcome.members.push_back(j);
      need -= values[j];
      c -= costs[j];
    }
  }
  return solution;
}

}  // namespace

DistrictShare ComputeFairShare(const Instance& instance, int district) {
  return ComputeFairShare(instance, district,
                          instance.districts[district].budget_share);
}

DistrictShare ComputeFairShare(const Instance& instance, int district,
                               const Rational& budget_cap) {
  std::vector<long long> costs;
  costs.reserve(instance.projects.size());
  for (const Project& p : instance.projects) costs.push_back(p.cost);
  const KnapsackSolution solution = SolveKnapsack(
      instance.districts[district].utilities, costs, FloorToInt(budget_cap));
  return DistrictShare{solution.value, solution.outcome};
}

FairShareProfile ComputeFairShares(const Instance& instance) {
  FairShareProfile profile;
  profile.shares.reserve(instance.districts.size());
  for (int i = 0; i < instance.num_districts(); ++i) {
    profile.shares.push_back(ComputeFairShare(instance, i));
  }
  return profile;
}

CoverKnapsackResult SolveCoverKnapsack(const Instance& instance,
                                       const CoverKnapsackQuery& query) {
  const int m = instance.num_projects();
  std::vector<long long> costs(m), welfare(m);
  long long total_cost = 0;
  long long total_welfare = 0;
  for (int j = 0; j < m; ++j) {
    costs[j] = instance.projects[j].cost;
    total_cost += costs[j];
    long long w = 0;
    for (const District& d : instance.districts) w += d.utilities[j];
    welfare[j] = w;
    total_welfare += w;
  }
  const long long cap = ClampCap(query.cost_cap, total_cost);

  // Common denominator so the DP maximizes plain big integers.
  BigInt denom(1);
  for (const Rational& w : query.cover_weights) {
    denom = lcm(denom, denominator(w));
  }
  std::vector<BigInt> cover(m);
  for (int j = 0; j < m; ++j) {
    cover[j] = numerator(query.cover_weights[j]) *
               (denom / denominator(query.cover_weights[j]));
  }
  const Rational scaled_threshold = query.cover_threshold * Rational(denom);
  const auto meets = [&](const BigInt& sum) {
    return Rational(sum) >= scaled_threshold;
  };

  // best[j][c][s] = max cover sum over subsets of items j..m-1 with
  // cost <= c and welfare exactly s; -1 marks "unreachable".
  const std::size_t cost_axis = static_cast<std::size_t>(cap) + 1;
  const std::size_t welfare_axis = static_cast<std::size_t>(total_welfare) + 1;
  const std::size_t layer = cost_axis * welfare_axis;
  const std::size_t cells = layer * static_cast<std::size_t>(m + 1);
  if (cells > kMaxCoverCells) {
    throw CapabilityError("cover-knapsack table too large (" +
                          std::to_string(cells) + " cells)");
  }
  std::vector<BigInt> best(cells, BigInt(-1));
  const auto at = [&](int j, long long c, long long s) -> BigInt& {
    return best[static_cast<std::size_t>(j) * layer +
                static_cast<std::size_t>(c) * welfare_axis +
                static_cast<std::size_t>(s)];
  };
  for (long long c = 0; c <= cap; ++c) at(m, c, 0) = 0;
  for (int j = m - 1; j >= 0; --j) {
    for (long long c = 0; c <= cap; ++c) {
      for (long long s = 0; s <= total_welfare; ++s) {
        BigInt v = at(j + 1, c, s);
        if (costs[j] <= c && welfare[j] <= s) {
          const BigInt& tail = at(j + 1, c - costs[j], s - welfare[j]);
          if (tail >= 0) v = std::max(v, BigInt(tail + cover[j]));
        }
        at(j, c, s) = v;
      }
    }
  }

  long long opt = -1;
  for (long long s = total_welfare; s >= 0; --s) {
    if (at(0, cap, s) >= 0 && meets(at(0, cap, s))) {
      opt = s;
      break;
    }
  }
  if (opt < 0) {
    throw InfeasibleError("no subset meets the cover threshold within cap");
  }

  CoverKnapsackResult result;
  result.welfare = opt;
  long long need = opt;
  long long c = cap;
  BigInt committed(0);
  for (int j = 0; j < m; ++j) {
    if (need == 0 && meets(committed)) break;
    if (costs[j] <= c && welfare[j] <= need) {
      const BigInt& tail = at(j + 1, c - costs[j], need - welfare[j]);
      if (tail >= 0 && meets(committed + cover[j] + tail)) {
        result.outcome.members.push_back(j);
        committed += cover[j];
        need -= welfare[j];
        c -= costs[j];
      }
    }
  }
  return result;
}

long long MaxFeasibleWelfare(const Instance& instance) {
  const int m = instance.num_projects();
  std::vector<long long> costs(m), welfare(m);
  for (int j = 0; j < m; ++j) {
    costs[j] = instance.projects[j].cost;
    long long w = 0;
    for (const District& d : instance.districts) w += d.utilities[j];
    welfare[j] = w;
  }
  return SolveKnapsack(welfare, costs, instance.budget).value;
}

}  // namespace dfpb
