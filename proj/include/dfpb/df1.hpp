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

#include <cstdint>
#include <optional>
#include <vector>

#include "dfpb/core.hpp"
#include "dfpb/rational.hpp"

namespace dfpb {

// Everything the coverage machinery needs to know about an instance:
// the fairness targets plus the (possibly scaled) per-district budget
// slices.  MakeFairnessView uses the instance's own shares; the scaled
// solver substitutes beta-scaled ones.
struct FairnessView {
  const Instance* instance = nullptr;
  const FairShareProfile* shares = nullptr;
  std::vector<Rational> district_budgets;
  Rational budget;
};

FairnessView MakeFairnessView(const Instance& instance,
                              const FairShareProfile& shares);

struct ResidualResult {
  Rational residual;          // min fractional spend outside W lifting
                              // the district to its fair share
  FractionalOutcome witness;  // at most one non-integral coordinate,
                              // zero on members of W
};

// Exact fractional greedy: scan unfunded projects by utility/cost
// density (zero-cost useful projects first), buy whole projects until
// the last one, which is bought fractionally.
ResidualResult ComputeResidual(const Instance& instance,
                               const FairShareProfile& shares, int district,
                               const Outcome& outcome);

struct CoverageReport {
  struct DistrictRow {
    Rational residual;
    Rational cover;  // budget slice minus residual
    FractionalOutcome witness;
  };
  std::vector<DistrictRow> districts;
  // Equals the budget exactly when the outcome is fair.  The converse
  // needs positive costs: a zero-cost project can lift a district to
  // its fair share at zero residual spend.
  Rational total_cover;
};

CoverageReport ComputeCoverage(const Instance& instance,
                               const FairShareProfile& shares,
                               const Outcome& outcome);
CoverageReport ComputeCoverage(const FairnessView& view,
                               const Outcome& outcome);

// Augments the outcome until it is fair-up-to-one: repeatedly take the
// fully-funded projects in the residual witness of the most deficient
// failing district and add the one with the largest coverage gain per
// cost (zero-cost first; ties by smallest id).  Each step's cost is
// repaid by an equal rise in coverage, so the added cost never exceeds
// budget − cover(outcome).
Outcome Df1Complete(const Instance& instance, const FairShareProfile& shares,
                    const Outcome& outcome);
Outcome Df1Complete(const FairnessView& view, const Outcome& outcome);

enum class CoverSubroutine { kExact, kLazyGreedy };

struct Df1pQuery {
  long long welfare_floor = 0;  // required total welfare (covering row)
  long long budget_cap = 0;     // cost cap (packing row)
  CoverSubroutine subroutine = CoverSubroutine::kExact;
  std::uint64_t seed = 0;  // greedy tie-shuffling only
};

// Maximize coverage subject to welfare ≥ floor and cost ≤ cap.
// Exact mode enumerates all subsets (kOracleProjectLimit guard) and
// returns the true argmax, ties by welfare then lexicographic member
// list.  Lazy-greedy mode seeds with every subset of size ≤ 2 and
// grows by marginal cover per cost (stale-bound lazy evaluation,
// seeded shuffle for tie-breaking), finishing with welfare-density
// top-up; no approximation guarantee.  Throws InfeasibleError when no
// subset reaches the welfare floor within the cap.
Outcome MaximizeCoverage(const Instance& instance,
                         const FairShareProfile& shares,
                         const Df1pQuery& query);
Outcome MaximizeCoverage(const FairnessView& view, const Df1pQuery& query);

struct CoverageRun {
  Outcome outcome;
  Rational cover;
};

struct AmplifyReport {
  std::size_t best_index = 0;  // first run attaining the max coverage
  double tail_bound = 1.0;     // exp(−2·eps0²·(1−1/e)²·n)
};

// Selects the best of n independent randomized runs and reports the
// Hoeffding failure bound for the configured eps0.
AmplifyReport AmplifyRuns(const std::vector<CoverageRun>& runs, double eps0);

struct PipelineOptions {
  CoverSubroutine subroutine = CoverSubroutine::kExact;
  int amplify = 1;          // independent greedy runs per welfare floor
  std::uint64_t seed = 0;   // base seed for the greedy runs
  double eps0 = 0.1;        // amplification tail parameter
};

struct PipelineResult {
  Outcome outcome;                    // completed, fair-up-to-one
  long long achieved_welfare_floor = 0;
  Outcome pre_completion;
  Rational pre_completion_cover;
  double amplify_tail_bound = 1.0;  // 1.0 when amplification is off
};

// Welfare-floor scan: for each floor B from the total welfare down to
// 0, maximize coverage; keep candidates with cover ≥ budget −
// allowance·budget; complete the best-welfare candidate.  Exact mode
// uses binary search over B (coverage optimum is monotone in B there);
// greedy mode scans linearly.  If the greedy subroutine never reaches
// the cover threshold, the best-cover candidate is completed instead
// (the completion cost bound still holds; the overall ≤ (1+allowance)·b
// budget claim may not).
PipelineResult SolveDf1Pipeline(const Instance& instance,
                                const FairShareProfile& shares,
                                const Rational& allowance,
                                const PipelineOptions& options);
PipelineResult SolveDf1Pipeline(const FairnessView& view,
                                const Rational& allowance,
                                const PipelineOptions& options);

// The same instance with every district contributing only beta of its
// budget slice; fair shares recomputed at the reduced slices (never
// larger than the originals).
struct ScaledInstance {
  Rational beta;
  FairShareProfile shares;
  std::vector<Rational> district_budgets;
  Rational budget;
};

ScaledInstance ScaleInstance(const Instance& instance, const Rational& beta);

FairnessView MakeFairnessView(const Instance& instance,
                              const ScaledInstance& scaled);

// Runs the pipeline on the beta-scaled instance so the completed cost
// lands within the ORIGINAL budget.  Default allowance: 0 for the
// exact subroutine; (1−beta)/beta for the greedy one, which makes
// (1+allowance)·beta·b = b.
PipelineResult SolveWithinBudget(
    const Instance& instance, const Rational& beta,
    const PipelineOptions& options,
    const std::optional<Rational>& allowance = std::nullopt);

}  // namespace dfpb
