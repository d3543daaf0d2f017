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
#include "dfpb/fair_shares.hpp"
#include "dfpb/lottery.hpp"
#include "dfpb/rational.hpp"
#include "support/brute.hpp"
#include "support/generators.hpp"

namespace {

using dfpb::FairShareProfile;
using dfpb::Instance;
using dfpb::MakeOutcome;
using dfpb::MwConfig;
using dfpb::Rational;

Rational ExpectedWelfare(const Instance& ins, int district,
                         const dfpb::Lottery& lottery) {
  Rational mean(0);
  for (const auto& entry : lottery.entries) {
    mean += entry.probability * dfpb::Welfare(ins, district, entry.outcome);
  }
  return mean;
}

}  // namespace

TEST_CASE("blending averages utilities and demands") {
  Instance ins;
  ins.budget = 2;
  ins.projects = {{0, 1, "a"}, {1, 1, "b"}};
  ins.districts = {{0, Rational(1), {2, 0}, "d0"},
                   {1, Rational(1), {0, 4}, "d1"}};
  FairShareProfile shares;
  shares.shares = {{1, MakeOutcome({0})}, {2, MakeOutcome({1})}};
  const auto query = dfpb::BlendDistricts(
      ins, shares, {Rational(1, 2), Rational(1, 2)});
  CHECK(query.cost_cap == 2);
  CHECK(query.cover_weights == std::vector<Rational>{Rational(1), Rational(2)});
  CHECK(query.cover_threshold == Rational(3, 2));
}

TEST_CASE("a single district blends to itself") {
  Instance ins;
  ins.budget = 2;
  ins.projects = {{0, 1, "a"}, {1, 1, "b"}};
  ins.districts = {{0, Rational(2), {3, 5}, "d0"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  const auto query = dfpb::BlendDistricts(ins, shares, {Rational(1)});
  CHECK(query.cover_weights == std::vector<Rational>{Rational(3), Rational(5)});
  CHECK(query.cover_threshold == Rational(shares.value(0)));
}

TEST_CASE("iteration count follows the epsilon/sw_max formula") {
  // Two districts, total welfare of all projects = 3, epsilon = 1:
  // ceil(4 * ln 2 * 9) = 25.
  Instance ins;
  ins.budget = 1;
  ins.projects = {{0, 1, "a"}, {1, 1, "b"}};
  ins.districts = {{0, Rational(1, 2), {1, 0}, "d0"},
                   {1, Rational(1, 2), {0, 2}, "d1"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  MwConfig config;
  config.epsilon = Rational(1);
  const auto [lottery, trace] = dfpb::RunMwLottery(ins, shares, config);
  CHECK(trace.sw_max == 3);
  CHECK(trace.iterations == 25);
  CHECK(static_cast<long long>(trace.steps.size()) == 25);
}

TEST_CASE("iteration override and epsilon validation") {
  Instance ins;
  ins.budget = 1;
  ins.projects = {{0, 1, "a"}};
  ins.districts = {{0, Rational(1), {1}, "d0"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);

  MwConfig config;
  config.epsilon = Rational(1, 2);
  config.iteration_override = 7;
  const auto [lottery, trace] = dfpb::RunMwLottery(ins, shares, config);
  CHECK(trace.iterations == 7);

  MwConfig bad;
  bad.epsilon = Rational(0);
  CHECK_THROWS_AS(dfpb::RunMwLottery(ins, shares, bad),
                  dfpb::ValidationError);
}

TEST_CASE("single district lotteries collapse to an exactly fair point mass") {
  Instance ins;
  ins.budget = 2;
  ins.projects = {{0, 1, "a"}, {1, 1, "b"}, {2, 2, "c"}};
  ins.districts = {{0, Rational(2), {3, 2, 4}, "d0"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  MwConfig config;
  config.epsilon = Rational(1);
  config.iteration_override = 9;
  const auto [lottery, trace] = dfpb::RunMwLottery(ins, shares, config);
  REQUIRE(lottery.entries.size() == 1);
  CHECK(lottery.entries[0].probability == Rational(1));
  CHECK(dfpb::Welfare(ins, 0, lottery.entries[0].outcome) >= shares.value(0));
}

TEST_CASE("lottery guarantees hold on random instances") {
  std::mt19937_64 rng(31337);
  dfpb::testing::GenConfig cfg;
  // Approval-style utilities keep the iteration count (quadratic in the
  // welfare bound) small enough for an exhaustive per-step audit.
  cfg.max_projects = 7;
  cfg.max_districts = 4;
  cfg.max_utility = 1;
  cfg.max_cost = 3;
  cfg.max_budget = 5;
  for (int it = 0; it < 30; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    MwConfig config;
    config.epsilon = Rational(1);
    config.sw_max_mode = dfpb::SwMaxMode::kFeasibleKnapsack;
    const auto [lottery, trace] = dfpb::RunMwLottery(ins, shares, config);
    CAPTURE(it);

    // Probabilities are exact and sum to 1.
    CHECK_NOTHROW(dfpb::ValidateLottery(ins, lottery));

    // Ex post: every support outcome is feasible and welfare-optimal.
    const auto opt = dfpb::testing::BruteFairOpt(ins, shares);
    REQUIRE(opt.has_value());
    for (const auto& entry : lottery.entries) {
      CHECK(dfpb::Cost(ins, entry.outcome) <= ins.budget);
      CHECK(dfpb::TotalWelfare(ins, entry.outcome) >= opt->value);
    }

    // Ex ante: expected welfare within epsilon of every fair share.
    for (int i = 0; i < ins.num_districts(); ++i) {
      CHECK(ExpectedWelfare(ins, i, lottery) >=
            Rational(shares.value(i)) - config.epsilon);
    }

    // Per-iteration: the chosen outcome is fair for its own blend, and
    // recorded mistakes are welfare minus fair share.
    for (const auto& step : trace.steps) {
      Rational blended(0);
      for (int i = 0; i < ins.num_districts(); ++i) {
        blended +=
            step.proportions[i] * dfpb::Welfare(ins, i, step.chosen);
      }
      CHECK(blended >= step.blended_threshold);
      for (int i = 0; i < ins.num_districts(); ++i) {
        CHECK(step.mistakes[i] ==
              dfpb::Welfare(ins, i, step.chosen) - shares.value(i));
      }
      CHECK(dfpb::Sum(step.proportions) == Rational(1));
    }

    // The multiplicative-weights regret inequality holds on the trace.
    const dfpb::RegretReport regret = dfpb::MwRegretCheck(trace);
    CHECK(regret.inequality_holds);
    CHECK(regret.average_blend_gain >= Rational(0));
  }
}

TEST_CASE("runs are deterministic") {
  std::mt19937_64 rng(8);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 6;
  cfg.max_districts = 3;
  const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  MwConfig config;
  config.epsilon = Rational(2);
  config.iteration_override = 40;
  const auto [lottery_a, trace_a] = dfpb::RunMwLottery(ins, shares, config);
  const auto [lottery_b, trace_b] = dfpb::RunMwLottery(ins, shares, config);
  REQUIRE(lottery_a.entries.size() == lottery_b.entries.size());
  for (std::size_t e = 0; e < lottery_a.entries.size(); ++e) {
    CHECK(lottery_a.entries[e].outcome == lottery_b.entries[e].outcome);
    CHECK(lottery_a.entries[e].probability ==
          lottery_b.entries[e].probability);
  }
  for (std::size_t t = 0; t < trace_a.steps.size(); ++t) {
    CHECK(trace_a.steps[t].weights == trace_b.steps[t].weights);
    CHECK(trace_a.steps[t].chosen == trace_b.steps[t].chosen);
  }
}

TEST_CASE("feasible-knapsack bound never exceeds the all-projects bound") {
  std::mt19937_64 rng(18);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 6;
  for (int it = 0; it < 30; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    MwConfig all, feas;
    all.epsilon = feas.epsilon = Rational(3);
    all.iteration_override = feas.iteration_override = 3;
    feas.sw_max_mode = dfpb::SwMaxMode::kFeasibleKnapsack;
    const auto [la, ta] = dfpb::RunMwLottery(ins, shares, all);
    const auto [lf, tf] = dfpb::RunMwLottery(ins, shares, feas);
    CHECK(tf.sw_max <= ta.sw_max);
  }
}

TEST_CASE("zero-welfare instances terminate immediately with a fair outcome") {
  Instance ins;
  ins.budget = 1;
  ins.projects = {{0, 1, "a"}};
  ins.districts = {{0, Rational(1), {0}, "d0"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  REQUIRE(shares.value(0) == 0);
  MwConfig config;
  config.epsilon = Rational(1, 10);
  const auto [lottery, trace] = dfpb::RunMwLottery(ins, shares, config);
  CHECK(lottery.entries.size() == 1);
  CHECK(trace.sw_max == 0);
  CHECK(trace.iterations == 1);
}
