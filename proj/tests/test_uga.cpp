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

#include <algorithm>
#include <random>
#include <vector>

#include "dfpb/core.hpp"
#include "dfpb/error.hpp"
#include "dfpb/fair_shares.hpp"
#include "dfpb/uga.hpp"
#include "support/brute.hpp"
#include "support/generators.hpp"

namespace {

using dfpb::FairShareProfile;
using dfpb::Instance;
using dfpb::MakeOutcome;
using dfpb::Outcome;
using dfpb::Rational;

Instance TwoDistrictsDisjoint() {
  Instance ins;
  ins.budget = 2;
  ins.projects = {{0, 1, "p0"}, {1, 1, "p1"}, {2, 1, "p2"}, {3, 1, "p3"}};
  ins.districts = {{0, Rational(1), {3, 3, 0, 0}, "d0"},
                   {1, Rational(1), {0, 0, 2, 2}, "d1"}};
  return ins;
}

}  // namespace

TEST_CASE("unanimity certificate") {
  SUBCASE("accepts unit costs with all-or-nothing scores") {
    Instance ins = TwoDistrictsDisjoint();
    const auto cert = dfpb::CheckUnanimity(ins);
    CHECK(cert.applicable());
    CHECK(cert.unit_costs);
    REQUIRE(cert.districts.size() == 2);
    CHECK(cert.districts[0].voter_count == 3);
    CHECK(cert.districts[0].unanimous);
    CHECK(cert.districts[1].voter_count == 2);
    CHECK(cert.violation().empty());
  }
  SUBCASE("a district scoring nothing passes vacuously") {
    Instance ins = TwoDistrictsDisjoint();
    ins.districts[1].utilities = {0, 0, 0, 0};
    CHECK(dfpb::CheckUnanimity(ins).applicable());
  }
  SUBCASE("rejects non-unit costs") {
    Instance ins = TwoDistrictsDisjoint();
    ins.projects[2].cost = 2;
    const auto cert = dfpb::CheckUnanimity(ins);
    CHECK_FALSE(cert.applicable());
    CHECK(cert.violation() == "projects must all cost 1");
  }
  SUBCASE("rejects mixed nonzero scores") {
    Instance ins = TwoDistrictsDisjoint();
    ins.districts[1].utilities = {0, 1, 2, 2};
    const auto cert = dfpb::CheckUnanimity(ins);
    CHECK_FALSE(cert.applicable());
    CHECK(cert.violation() ==
          "district 1 is not unanimous (utilities must be 0 or one common "
          "value)");
  }
}

TEST_CASE("inapplicable instances raise capability errors") {
  Instance ins = TwoDistrictsDisjoint();
  ins.projects[0].cost = 3;
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  CHECK_THROWS_AS(dfpb::SolveUga(ins, shares), dfpb::CapabilityError);
  CHECK_THROWS_AS(dfpb::ConditionalCover(ins, shares, 0, Outcome{}),
                  dfpb::CapabilityError);
}

TEST_CASE("conditional cover counts districts still short of their share") {
  const Instance ins = TwoDistrictsDisjoint();
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  REQUIRE(shares.value(0) == 3);
  REQUIRE(shares.value(1) == 2);

  // Each useful project covers exactly one unit of its district's
  // remaining demand.
  CHECK(dfpb::ConditionalCover(ins, shares, 0, Outcome{}) == 1);
  CHECK(dfpb::ConditionalCover(ins, shares, 2, Outcome{}) == 1);
  // A satisfied district contributes nothing.
  CHECK(dfpb::ConditionalCover(ins, shares, 1, MakeOutcome({0})) == 0);
  // Already-funded projects add nothing.
  CHECK(dfpb::ConditionalCover(ins, shares, 0, MakeOutcome({0})) == 0);
  // A project useless to everyone adds nothing.
  Instance padded = ins;
  for (auto& d : padded.districts) d.utilities.push_back(0);
  padded.projects.push_back({4, 1, "p4"});
  CHECK(dfpb::ConditionalCover(padded, dfpb::ComputeFairShares(padded), 4,
                               Outcome{}) == 0);
}

TEST_CASE("greedy picks one project per district under disjoint approvals") {
  const Instance ins = TwoDistrictsDisjoint();
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  std::vector<dfpb::UgaTraceEntry> trace;
  const Outcome result = dfpb::SolveUga(ins, shares, &trace);
  CHECK(result.members == std::vector<int>{0, 2});
  CHECK(dfpb::IsDistrictFair(ins, shares, result));
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].project == 0);  // tie on cover broken by higher welfare
  CHECK(trace[0].cover_gain == 1);
  CHECK(trace[0].welfare == 3);
  CHECK(trace[1].project == 2);
  CHECK(trace[1].cover_gain == 1);
  CHECK(trace[1].welfare == 2);
}

TEST_CASE("zero-demand districts defer to welfare") {
  // d0's slice rounds down to zero projects, so every pick is a zero-
  // cover tie resolved by total welfare.
  Instance ins;
  ins.budget = 1;
  ins.projects = {{0, 1, "p0"}, {1, 1, "p1"}};
  ins.districts = {{0, Rational(1, 2), {4, 4}, "d0"},
                   {1, Rational(1, 2), {0, 2}, "d1"}};
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  REQUIRE(shares.value(0) == 0);
  REQUIRE(shares.value(1) == 0);
  const Outcome result = dfpb::SolveUga(ins, shares);
  CHECK(result.members == std::vector<int>{1});  // welfare 6 beats 4
}

TEST_CASE("surplus budget funds everything") {
  Instance ins = TwoDistrictsDisjoint();
  ins.budget = 9;
  ins.districts[0].budget_share = Rational(9, 2);
  ins.districts[1].budget_share = Rational(9, 2);
  const FairShareProfile shares = dfpb::ComputeFairShares(ins);
  const Outcome result = dfpb::SolveUga(ins, shares);
  CHECK(result.members == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("greedy is fair and half-optimal on random unanimous instances") {
  std::mt19937_64 rng(60660);
  dfpb::testing::GenConfig cfg;
  cfg.max_projects = 10;
  cfg.max_districts = 4;
  cfg.unit_costs = true;
  cfg.unanimous = true;
  for (int it = 0; it < 300; ++it) {
    const Instance ins = dfpb::testing::RandomInstance(rng, cfg);
    const FairShareProfile shares = dfpb::ComputeFairShares(ins);
    CAPTURE(it);
    std::vector<dfpb::UgaTraceEntry> trace;
    const Outcome result = dfpb::SolveUga(ins, shares, &trace);

    CHECK(dfpb::IsDistrictFair(ins, shares, result));
    CHECK(dfpb::Cost(ins, result) <= ins.budget);
    const long long picks =
        std::min<long long>(ins.budget, ins.num_projects());
    CHECK(static_cast<long long>(result.members.size()) == picks);

    const auto opt = dfpb::testing::BruteFairOpt(ins, shares);
    REQUIRE(opt.has_value());
    CHECK(2 * dfpb::TotalWelfare(ins, result) >= opt->value);

    // The trace replays exactly: each recorded gain is the true
    // conditional cover at that point, and gains never increase.
    Outcome sofar;
    long long previous_gain = -1;
    for (std::size_t t = 0; t < trace.size(); ++t) {
      CHECK(trace[t].cover_gain ==
            dfpb::ConditionalCover(ins, shares, trace[t].project, sofar));
      if (t > 0) CHECK(trace[t].cover_gain <= previous_gain);
      previous_gain = trace[t].cover_gain;
      sofar.members.push_back(trace[t].project);
      std::sort(sofar.members.begin(), sofar.members.end());
    }
    CHECK(sofar == result);
  }
}
