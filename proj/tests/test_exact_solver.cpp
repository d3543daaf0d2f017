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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dfpb/core.hpp"
#include "dfpb/error.hpp"
#include "dfpb/exact_solver.hpp"
#include "dfpb/fair_shares.hpp"
#include "support/brute.hpp"
#include "support/generators.hpp"

namespace {

using dfpb::FairShareProfile;
using dfpb::Instance;
using dfpb::MakeOutcome;
using dfpb::Outcome;
using dfpb::Rational;

// Two districts forced to share: one cheap pet project each, plus an
// expensive project only the first district cares about.
Instance RivalDistricts() {
  Instance ins;
  ins.budget = 2;
  ins.projects = {{0, 1, "a"}, {1, 1, "b"}, {2, 2, "c"}};
  ins.districts = {{0, Rational(1), {2, 0, 6}, "d0"},
                   {1, Rational(1), {0, 2, 0}, "d1"}};
  return ins;
}

}  // namespace

TEST_CASE("fairness can force a lower-welfare outcome") {
  const Instance ins = RivalDistricts();
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  REQUIRE(shares.value(0) == 2);
  REQUIRE(shares.value(1) == 2);

  // {c} has welfare 6 but starves district 1; {a, b} is the fair optimum.
  const Outcome outcome = dfpb::SolveExactDp(ins, shares);
  CHECK(outcome.members == std::vector<int>{0, 1});
  CHECK(dfpb::TotalWelfare(ins, outcome) == 4);
  CHECK(dfpb::IsDistrictFair(ins, shares, outcome));

  // With demands dropped, the welfare maximizer wins instead.
  FairShareProfile none;
  none.shares = {{0, MakeOutcome({})}, {0, MakeOutcome({})}};
  const Outcome unconstrained = dfpb::SolveExactDp(ins, none);
  CHECK(unconstrained.members == std::vector<int>{2});
  CHECK(dfpb::TotalWelfare(ins, unconstrained) == 6);
}

TEST_CASE("single district reduces to the demanded knapsack") {
  Instance ins;
  ins.budget = 3;
  ins.projects = {{0, 1, "a"}, {1, 2, "b"}, {2, 3, "c"}};
  ins.districts = {{0, Rational(3), {2, 3, 4}, "d0"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  REQUIRE(shares.value(0) == 5);  // {a, b} at cost 3
  const Outcome outcome = dfpb::SolveExactDp(ins, shares);
  CHECK(dfpb::Welfare(ins, 0, outcome) == 5);
  CHECK(dfpb::Cost(ins, outcome) <= 3);
}

TEST_CASE("district limit guards the exponential table") {
  std::mt19937_64 rng(42);
  dfpb::testing::GenConfig cfg;
  cfg.max_districts = 4;
  Instance ins;
  do {
    ins = dfpb::testing::RandomInstance(rng, cfg);
  } while (ins.num_districts() <= 3);
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  CHECK_THROWS_AS(dfpb::SolveExactDp(ins, shares, 3), dfpb::CapabilityError);
  CHECK_NOTHROW(dfpb::SolveExactDp(ins, shares, 4));
}

TEST_CASE("dp equals the enumeration oracle on random instances") {
  std::mt19937_64 rng(2024);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 9;
  cfg.max_districts = 3;
  for (int it = 0; it < 300; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    const auto want = dfpb::testing::BruteFairOpt(ins, shares);
    REQUIRE(want.has_value());  // the union of witnesses is always fair
    const Outcome got = dfpb::SolveExactDp(ins, shares);
    CAPTURE(it);
    CHECK(dfpb::TotalWelfare(ins, got) == want->value);
    CHECK(got.members == want->members);
    CHECK(dfpb::IsDistrictFair(ins, shares, got));
    CHECK(dfpb::IsBudgetFeasible(ins, got));
  }
}

TEST_CASE("dp output is deterministic") {
  std::mt19937_64 rng(7);
  dfpb::testing::GenConfig cfg;
  for (int it = 0; it < 20; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    const Outcome a = dfpb::SolveExactDp(ins, shares);
    const Outcome b = dfpb::SolveExactDp(ins, shares);
    CHECK(a == b);
  }
}

TEST_CASE("oracle enumerator agrees with a plain re-enumeration") {
  std::mt19937_64 rng(99);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 8;
  for (int it = 0; it < 100; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    const auto want = dfpb::testing::BruteFairOpt(ins, shares);
    const dfpb::OracleResult got = dfpb::OracleSolve(ins, shares);
    REQUIRE(want.has_value());
    CAPTURE(it);
    CHECK(got.opt_welfare == want->value);
    CHECK(got.witness.members == want->members);

    // Count fair feasible outcomes independently.
    long long count = 0;
    for (unsigned mask = 0; mask < (1u << ins.num_projects()); ++mask) {
      if (dfpb::testing::MaskCost(ins, mask) <= ins.budget &&
          dfpb::testing::MaskIsFair(ins, shares, mask)) {
        ++count;
      }
    }
    CHECK(got.fair_outcome_count == count);
  }
}

TEST_CASE("vacuous demands make the oracle a plain knapsack") {
  std::mt19937_64 rng(123);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 8;
  for (int it = 0; it < 50; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    FairShareProfile none;
    for (int i = 0; i < ins.num_districts(); ++i) {
      none.shares.push_back({0, MakeOutcome({})});
    }
    std::vector<long long> costs, welfare;
    for (const auto& p : ins.projects) costs.push_back(p.cost);
    for (int j = 0; j < ins.num_projects(); ++j) {
      long long w = 0;
      for (const auto& d : ins.districts) w += d.utilities[j];
      welfare.push_back(w);
    }
    CHECK(dfpb::OracleSolve(ins, none).opt_welfare ==
          dfpb::testing::BruteKnapsack(welfare, costs, ins.budget).value);
  }
}

TEST_CASE("df1 frontier dominates the fair optimum") {
  std::mt19937_64 rng(456);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 8;
  for (int it = 0; it < 100; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    const long long frontier = dfpb::OracleDf1Frontier(ins, shares);
    const auto df1 = dfpb::testing::BruteDf1Opt(ins, shares);
    REQUIRE(df1.has_value());
    CHECK(frontier == df1->value);
    CHECK(frontier >= dfpb::OracleSolve(ins, shares).opt_welfare);
  }
}

TEST_CASE("oracle refuses oversized enumerations") {
  Instance ins;
  ins.budget = 1;
  const int m = dfpb::kOracleProjectLimit + 1;
  for (int j = 0; j < m; ++j) {
    ins.projects.push_back({j, 1, "p" + std::to_string(j)});
  }
  dfpb::District d;
  d.id = 0;
  d.label = "d0";
  d.budget_share = Rational(1);
  d.utilities.assign(m, 1);
  ins.districts.push_back(d);
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  CHECK_THROWS_AS(dfpb::OracleSolve(ins, shares), dfpb::CapabilityError);
}
