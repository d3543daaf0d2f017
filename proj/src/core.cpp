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

#include "dfpb/core.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "dfpb/error.hpp"

namespace dfpb {

bool Outcome::contains(int project) const {
  return std::binary_search(members.begin(), members.end(), project);
}

Outcome MakeOutcome(std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Outcome{std::move(members)};
}

bool OutcomeLess(const Outcome& a, const Outcome& b) {
  return std::lexicographical_compare(a.members.begin(), a.members.end(),
                                      b.members.begin(), b.members.end());
}

long long Cost(const Instance& instance, const Outcome& outcome) {
  long long total = 0;
  for (int j : outcome.members) total += instance.projects[j].cost;
  return total;
}

long long Welfare(const Instance& instance, int district,
                  const Outcome& outcome) {
  const auto& utilities = instance.districts[district].utilities;
  long long total = 0;
  for (int j : outcome.members) total += utilities[j];
  return total;
}

long long TotalWelfare(const Instance& instance, const Outcome& outcome) {
  long long total = 0;
  for (int i = 0; i < instance.num_districts(); ++i) {
    total += Welfare(instance, i, outcome);
  }
  return total;
}

Rational FractionalCost(const Instance& instance,
                        const FractionalOutcome& outcome) {
  Rational total(0);
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (outcome.fractions[j] != 0) {
      total += outcome.fractions[j] * instance.projects[j].cost;
    }
  }
  return total;
}

Rational FractionalWelfare(const Instance& instance, int district,
                           const FractionalOutcome& outcome) {
  const auto& utilities = instance.districts[district].utilities;
  Rational total(0);
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (outcome.fractions[j] != 0) {
      total += outcome.fractions[j] * utilities[j];
    }
  }
  return total;
}

bool IsBudgetFeasible(const Instance& instance, const Outcome& outcome) {
  return Cost(instance, outcome) <= instance.budget;
}

bool IsDistrictFair(const Instance& instance, const FairShareProfile& shares,
                    const Outcome& outcome) {
  for (int i = 0; i < instance.num_districts(); ++i) {
    if (Welfare(instance, i, outcome) < shares.value(i)) return false;
  }
  return true;
}

long long BestUnfundedUtility(const Instance& instance, int district,
                              const Outcome& outcome) {
  const auto& utilities = instance.districts[district].utilities;
  long long best = 0;  // no unfunded project => no boost
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (!outcome.contains(j)) best = std::max(best, utilities[j]);
  }
  return best;
}

bool IsDistrictFairUpToOne(const Instance& instance,
                           const FairShareProfile& shares,
                           const Outcome& outcome) {
  for (int i = 0; i < instance.num_districts(); ++i) {
    if (Welfare(instance, i, outcome) + BestUnfundedUtility(instance, i, outcome) <
        shares.value(i)) {
      return false;
    }
  }
  return true;
}

void ValidateInstance(const Instance& instance) {
  if (instance.budget < 1) {
    throw ValidationError("budget must be a positive integer");
  }
  const int m = instance.num_projects();
  const int k = instance.num_districts();
  if (m == 0) throw ValidationError("instance has no projects");
  if (k == 0) throw ValidationError("instance has no districts");

  long long total_cost = 0;
  std::set<std::string> project_labels;
  for (int j = 0; j < m; ++j) {
    const Project& p = instance.projects[j];
    if (p.id != j) throw ValidationError("project ids must be dense 0-based");
    if (p.cost < 0) {
      throw ValidationError("project '" + p.label + "' has negative cost");
    }
    if (p.label.empty()) throw ValidationError("project label must be set");
    if (!project_labels.insert(p.label).second) {
      throw ValidationError("duplicate project label '" + p.label + "'");
    }
    total_cost += p.cost;
    if (total_cost > kMaxTotalCost) {
      throw ValidationError("total project cost exceeds supported cap");
    }
  }

  Rational share_sum(0);
  std::set<std::string> district_labels;
  for (int i = 0; i < k; ++i) {
    const District& d = instance.districts[i];
    if (d.id != i) throw ValidationError("district ids must be dense 0-based");
    if (d.label.empty()) throw ValidationError("district label must be set");
    if (!district_labels.insert(d.label).second) {
      throw ValidationError("duplicate district label '" + d.label + "'");
    }
    if (d.budget_share < 0) {
      throw ValidationError("district '" + d.label +
                            "' has a negative budget share");
    }
    if (static_cast<int>(d.utilities.size()) != m) {
      throw ValidationError("district '" + d.label +
                            "' must score every project");
    }
    long long total_utility = 0;
    for (long long u : d.utilities) {
      if (u < 0) {
        throw ValidationError("district '" + d.label +
                              "' has a negative utility");
      }
      total_utility += u;
      if (total_utility > kMaxTotalUtility) {
        throw ValidationError("district '" + d.label +
                              "' exceeds the total utility cap");
      }
    }
    share_sum += d.budget_share;
  }
  if (share_sum != Rational(instance.budget)) {
    throw ValidationError(
        "district budget shares must sum exactly to the budget");
  }
}

void ValidateOutcome(const Instance& instance, const Outcome& outcome) {
  int previous = -1;
  for (int j : outcome.members) {
    if (j < 0 || j >= instance.num_projects()) {
      throw ValidationError("outcome references unknown project id " +
                            std::to_string(j));
    }
    if (j <= previous) {
      throw ValidationError("outcome members must be sorted and unique");
    }
    previous = j;
  }
}

void ValidateLottery(const Instance& instance, const Lottery& lottery) {
  Rational total(0);
  for (const LotteryEntry& entry : lottery.entries) {
    ValidateOutcome(instance, entry.outcome);
    if (entry.probability <= 0 || entry.probability > 1) {
      throw ValidationError("lottery probabilities must lie in (0, 1]");
    }
    total += entry.probability;
  }
  if (total != 1) {
    throw ValidationError("lottery probabilities must sum exactly to 1");
  }
}

void ValidateFractionalOutcome(const Instance& instance,
                               const FractionalOutcome& outcome) {
  if (static_cast<int>(outcome.fractions.size()) != instance.num_projects()) {
    throw ValidationError("fractional outcome must cover every project");
  }
  for (const Rational& x : outcome.fractions) {
    if (x < 0 || x > 1) {
      throw ValidationError("fractional outcome entries must lie in [0, 1]");
    }
  }
}

}  // namespace dfpb
