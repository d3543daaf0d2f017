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

#include "dfpb/df1.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "dfpb/error.hpp"
#include "dfpb/exact_solver.hpp"
#include "dfpb/fair_shares.hpp"

namespace dfpb {
namespace {

// Welfare floors are scanned one by one in greedy mode; cap the range
// so degenerate huge-utility instances fail loudly instead of looping
// for hours.
constexpr long long kMaxGreedyScan = 100'000;

using Int128 = __int128;

// Projects useful to a district, by utility-per-cost density
// descending; zero-cost useful projects sort first (infinite density).
std::vector<int> DensityOrder(const Instance& instance, int district) {
  const auto& utilities = instance.districts[district].utilities;
  std::vector<int> order;
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (utilities[j] > 0) order.push_back(j);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Int128 lhs = static_cast<Int128>(utilities[a]) *
                       instance.projects[b].cost;
    const Int128 rhs = static_cast<Int128>(utilities[b]) *
                       instance.projects[a].cost;
    if (lhs != rhs) return lhs > rhs;
    return a < b;
  });
  return order;
}

std::vector<std::vector<int>> AllDensityOrders(const Instance& instance) {
  std::vector<std::vector<int>> orders;
  orders.reserve(instance.districts.size());
  for (int i = 0; i < instance.num_districts(); ++i) {
    orders.push_back(DensityOrder(instance, i));
  }
  return orders;
}

std::vector<char> FundedFlags(const Instance& instance,
                              const Outcome& outcome) {
  std::vector<char> funded(instance.num_projects(), 0);
  for (int j : outcome.members) funded[j] = 1;
  return funded;
}

long long FundedWelfare(const Instance& instance, int district,
                        const std::vector<char>& funded) {
  const auto& utilities = instance.districts[district].utilities;
  long long total = 0;
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (funded[j]) total += utilities[j];
  }
  return total;
}

// Cheapest fractional top-up for one district (no witness).
Rational ResidualValue(const Instance& instance, int district,
                       long long fair_share, const std::vector<char>& funded,
                       const std::vector<int>& order) {
  long long gap = fair_share - FundedWelfare(instance, district, funded);
  if (gap <= 0) return Rational(0);
  const auto& utilities = instance.districts[district].utilities;
  Rational cost(0);
  for (int j : order) {
    if (funded[j]) continue;
    const long long u = utilities[j];
    if (u >= gap) {
      cost += Rational(gap, u) * instance.projects[j].cost;
      return cost;
    }
    cost += instance.projects[j].cost;
    gap -= u;
  }
  assert(false && "fair share exceeds the district's total utility");
  return cost;
}

ResidualResult ResidualWithWitness(const Instance& instance, int district,
                                   long long fair_share,
                                   const std::vector<char>& funded,
                                   const std::vector<int>& order) {
  ResidualResult result;
  result.residual = 0;
  result.witness.fractions.assign(instance.num_projects(), Rational(0));
  long long gap = fair_share - FundedWelfare(instance, district, funded);
  if (gap <= 0) return result;
  const auto& utilities = instance.districts[district].utilities;
  for (int j : order) {
    if (funded[j]) continue;
    const long long u = utilities[j];
    if (u >= gap) {
      const Rational fraction(gap, u);
      result.witness.fractions[j] = fraction;
      result.residual += fraction * instance.projects[j].cost;
      return result;
    }
    result.witness.fractions[j] = 1;
    result.residual += instance.projects[j].cost;
    gap -= u;
  }
  assert(false && "fair share exceeds the district's total utility");
  return result;
}

Rational TotalCover(const FairnessView& view, const std::vector<char>& funded,
                    const std::vector<std::vector<int>>& orders) {
  Rational total(0);
  for (int i = 0; i < view.instance->num_districts(); ++i) {
    total += view.district_budgets[i] -
             ResidualValue(*view.instance, i, view.shares->value(i), funded,
                           orders[i]);
  }
  return total;
}

std::vector<long long> TotalUtilities(const Instance& instance) {
  std::vector<long long> totals(instance.num_projects(), 0);
  for (const District& d : instance.districts) {
    for (int j = 0; j < instance.num_projects(); ++j) {
      totals[j] += d.utilities[j];
    }
  }
  return totals;
}

struct SubsetCandidate {
  Rational cover;
  long long welfare = -1;
  Outcome outcome;

  // True when (cover, welfare, lex-smaller members) beats `other`.
  bool Beats(const SubsetCandidate& other) const {
    if (other.welfare < 0) return true;
    if (cover != other.cover) return cover > other.cover;
    if (welfare != other.welfare) return welfare > other.welfare;
    return OutcomeLess(outcome, other.outcome);
  }
};

SubsetCandidate ExactMaximizeCoverage(const FairnessView& view,
                                      long long welfare_floor,
                                      long long budget_cap,
                                      const std::vector<std::vector<int>>&
                                          orders) {
  const Instance& instance = *view.instance;
  const int m = instance.num_projects();
  if (m > kOracleProjectLimit) {
    throw CapabilityError(
        "exact coverage maximization supports at most " +
        std::to_string(kOracleProjectLimit) + " projects, got " +
        std::to_string(m));
  }
  const std::vector<long long> totals = TotalUtilities(instance);

  SubsetCandidate best;
  std::vector<char> funded(m, 0);
  long long cost = 0;
  long long welfare = 0;
  std::uint32_t mask = 0;
  const std::uint64_t subsets = 1ULL << m;
  for (std::uint64_t index = 0;; ++index) {
    if (cost <= budget_cap && welfare >= welfare_floor) {
      SubsetCandidate candidate;
      candidate.cover = TotalCover(view, funded, orders);
      candidate.welfare = welfare;
      for (int j = 0; j < m; ++j) {
        if (funded[j]) candidate.outcome.members.push_back(j);
      }
      if (candidate.Beats(best)) best = std::move(candidate);
    }
    if (index + 1 == subsets) break;
    const std::uint32_t next =
        static_cast<std::uint32_t>((index + 1) ^ ((index + 1) >> 1));
    const int j = std::countr_zero(mask ^ next);
    const bool insert = (next >> j) & 1u;
    funded[j] = insert ? 1 : 0;
    cost += (insert ? 1 : -1) * instance.projects[j].cost;
    welfare += (insert ? 1 : -1) * totals[j];
    mask = next;
  }
  if (best.welfare < 0) {
    throw InfeasibleError("no outcome reaches welfare " +
                          std::to_string(welfare_floor) + " within cost cap " +
                          std::to_string(budget_cap));
  }
  return best;
}

// Ratio key "gain per cost" with an exact infinity for free projects.
struct GainKey {
  bool infinite = false;
  Rational gain;
  long long cost = 1;

  static GainKey Of(const Rational& gain, long long cost) {
    GainKey key;
    key.infinite = (cost == 0);
    key.gain = gain;
    key.cost = cost;
    return key;
  }

  bool BeatsOrTies(const GainKey& other, bool* tie) const {
    *tie = false;
    if (infinite != other.infinite) return infinite;
    if (infinite) {
      if (gain != other.gain) return gain > other.gain;
      *tie = true;
      return false;
    }
    const Rational lhs = gain * other.cost;
    const Rational rhs = other.gain * cost;
    if (lhs != rhs) return lhs > rhs;
    *tie = true;
    return false;
  }
};

struct GreedyOutcome {
  bool feasible = false;
  SubsetCandidate candidate;
};

GreedyOutcome GreedyFromSeed(const FairnessView& view,
                             std::vector<char> funded, long long welfare_floor,
                             long long budget_cap,
                             const std::vector<std::vector<int>>& orders,
                             const std::vector<long long>& totals,
                             std::mt19937_64& rng) {
  const Instance& instance = *view.instance;
  const int m = instance.num_projects();

  long long cost = 0;
  long long welfare = 0;
  for (int j = 0; j < m; ++j) {
    if (funded[j]) {
      cost += instance.projects[j].cost;
      welfare += totals[j];
    }
  }
  if (cost > budget_cap) return {};

  Rational cover = TotalCover(view, funded, orders);
  // Stale upper bounds on marginal coverage: submodularity lets us
  // skip re-evaluating projects whose old gain already loses.
  std::vector<std::optional<Rational>> stale_gain(m);

  std::vector<int> scan(m);
  std::iota(scan.begin(), scan.end(), 0);

  while (true) {
    std::shuffle(scan.begin(), scan.end(), rng);
    int best = -1;
    GainKey best_key;
    Rational best_gain;
    for (int x : scan) {
      if (funded[x] || cost + instance.projects[x].cost > budget_cap) {
        continue;
      }
      if (best >= 0 && stale_gain[x].has_value()) {
        bool tie = false;
        const GainKey bound =
            GainKey::Of(*stale_gain[x], instance.projects[x].cost);
        if (!bound.BeatsOrTies(best_key, &tie) && !tie) continue;
      }
      funded[x] = 1;
      const Rational gain = TotalCover(view, funded, orders) - cover;
      funded[x] = 0;
      stale_gain[x] = gain;
      const GainKey key = GainKey::Of(gain, instance.projects[x].cost);
      bool tie = false;
      if (best < 0 || key.BeatsOrTies(best_key, &tie)) {
        best = x;
        best_key = key;
        best_gain = gain;
      }
      // On exact ties the earlier pick (random via shuffle) stands.
    }
    if (best < 0) break;  // nothing affordable remains

    if (best_gain == 0 && welfare >= welfare_floor) break;
    if (best_gain == 0) {
      // Coverage is saturated but the welfare floor is not met: top up
      // by welfare density instead.
      int top = -1;
      for (int x : scan) {
        if (funded[x] || cost + instance.projects[x].cost > budget_cap) {
          continue;
        }
        if (top < 0) {
          top = x;
          continue;
        }
        const Int128 lhs =
            static_cast<Int128>(totals[x]) * instance.projects[top].cost;
        const Int128 rhs =
            static_cast<Int128>(totals[top]) * instance.projects[x].cost;
        if (lhs > rhs) top = x;
      }
      best = top;
    }
    funded[best] = 1;
    cost += instance.projects[best].cost;
    welfare += totals[best];
    cover = TotalCover(view, funded, orders);
  }

  if (welfare < welfare_floor) return {};
  GreedyOutcome result;
  result.feasible = true;
  result.candidate.cover = cover;
  result.candidate.welfare = welfare;
  for (int j = 0; j < m; ++j) {
    if (funded[j]) result.candidate.outcome.members.push_back(j);
  }
  return result;
}

SubsetCandidate GreedyMaximizeCoverage(const FairnessView& view,
                                       long long welfare_floor,
                                       long long budget_cap,
                                       std::uint64_t seed,
                                       const std::vector<std::vector<int>>&
                                           orders) {
  const Instance& instance = *view.instance;
  const int m = instance.num_projects();
  const std::vector<long long> totals = TotalUtilities(instance);
  std::mt19937_64 rng(seed);

  SubsetCandidate best;
  bool any = false;
  const auto consider = [&](std::vector<char> seed_funded) {
    GreedyOutcome run =
        GreedyFromSeed(view, std::move(seed_funded), welfare_floor,
                       budget_cap, orders, totals, rng);
    if (run.feasible && (!any || run.candidate.Beats(best))) {
      best = std::move(run.candidate);
      any = true;
    }
  };

  consider(std::vector<char>(m, 0));
  for (int a = 0; a < m; ++a) {
    std::vector<char> funded(m, 0);
    funded[a] = 1;
    consider(funded);
    for (int b = a + 1; b < m; ++b) {
      std::vector<char> pair(m, 0);
      pair[a] = 1;
      pair[b] = 1;
      consider(pair);
    }
  }
  if (!any) {
    throw InfeasibleError("greedy search found no outcome with welfare " +
                          std::to_string(welfare_floor) + " within cost cap " +
                          std::to_string(budget_cap));
  }
  return best;
}

struct ScanChoice {
  bool kept = false;  // met the coverage threshold
  long long floor = 0;
  SubsetCandidate candidate;
  double tail_bound = 1.0;
};

Outcome Df1CompleteImpl(const FairnessView& view, const Outcome& outcome,
                        const std::vector<std::vector<int>>& orders) {
  const Instance& instance = *view.instance;
  const FairShareProfile& shares = *view.shares;
  const int m = instance.num_projects();
  std::vector<char> funded = FundedFlags(instance, outcome);

  while (true) {
    // Find failing districts (fair share unreachable even with the
    // single best unfunded project) and the largest residual among
    // them.
    int worst = -1;
    Rational worst_residual(-1);
    std::vector<Rational> residuals(instance.num_districts());
    for (int i = 0; i < instance.num_districts(); ++i) {
      const long long have = FundedWelfare(instance, i, funded);
      const long long f = shares.value(i);
      residuals[i] =
          ResidualValue(instance, i, f, funded, orders[i]);
      if (have >= f) continue;
      long long best_unfunded = 0;
      const auto& utilities = instance.districts[i].utilities;
      for (int j = 0; j < m; ++j) {
        if (!funded[j]) best_unfunded = std::max(best_unfunded, utilities[j]);
      }
      if (have + best_unfunded >= f) continue;
      if (residuals[i] > worst_residual) {
        worst_residual = residuals[i];
        worst = i;
      }
    }
    if (worst < 0) break;  // fair up to one everywhere

    const ResidualResult witness = ResidualWithWitness(
        instance, worst, shares.value(worst), funded, orders[worst]);
    // A failing district's witness must fund some project outright: a
    // single fractional project would mean one project suffices, i.e.
    // the district was not failing.
    int pick = -1;
    GainKey pick_key;
    const Rational base = Sum(residuals);
    for (int j = 0; j < m; ++j) {
      if (witness.witness.fractions[j] != 1) continue;
      funded[j] = 1;
      Rational after(0);
      for (int i = 0; i < instance.num_districts(); ++i) {
        after += ResidualValue(instance, i, shares.value(i), funded,
                               orders[i]);
      }
      funded[j] = 0;
      const Rational gain = base - after;  // total coverage increase
      const GainKey key = GainKey::Of(gain, instance.projects[j].cost);
      bool tie = false;
      if (pick < 0 || key.BeatsOrTies(pick_key, &tie)) {
        pick = j;
        pick_key = key;
      }
      // Ties keep the smaller id (scan order is ascending).
    }
    assert(pick >= 0 && "failing district must fund a full project");
    funded[pick] = 1;
  }

  Outcome result;
  for (int j = 0; j < m; ++j) {
    if (funded[j]) result.members.push_back(j);
  }
  return result;
}

PipelineResult RunPipeline(const FairnessView& view, const Rational& allowance,
                           const PipelineOptions& options) {
  if (allowance < 0) {
    throw ValidationError("overspend allowance must be nonnegative");
  }
  if (options.amplify < 1) {
    throw ValidationError("amplify count must be at least 1");
  }
  const Instance& instance = *view.instance;
  const std::vector<std::vector<int>> orders = AllDensityOrders(instance);
  const std::vector<long long> totals = TotalUtilities(instance);
  const long long welfare_ceiling =
      std::accumulate(totals.begin(), totals.end(), 0LL);
  const long long budget_cap = FloorToInt(view.budget);
  const Rational cover_threshold =
      view.budget - allowance * view.budget;

  ScanChoice chosen;
  if (options.subroutine == CoverSubroutine::kExact) {
    // Coverage optimum is nonincreasing in the welfare floor here, so
    // binary search for the largest floor meeting the threshold; its
    // solution is also the best-welfare kept one (any kept candidate's
    // welfare is itself a kept floor).
    std::map<long long, SubsetCandidate> cache;
    const auto keeps = [&](long long floor) {
      try {
        auto [it, inserted] = cache.try_emplace(floor);
        if (inserted) {
          it->second =
              ExactMaximizeCoverage(view, floor, budget_cap, orders);
        }
        return it->second.cover >= cover_threshold;
      } catch (const InfeasibleError&) {
        cache.erase(floor);
        return false;
      }
    };
    long long lo = 0;
    long long hi = welfare_ceiling;
    if (!keeps(0)) {
      throw InfeasibleError(
          "no outcome meets the coverage threshold; allowance too strict");
    }
    while (lo < hi) {
      const long long mid = lo + (hi - lo + 1) / 2;
      if (keeps(mid)) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    chosen.kept = true;
    chosen.floor = lo;
    chosen.candidate = cache.at(lo);
  } else {
    if (welfare_ceiling > kMaxGreedyScan) {
      throw CapabilityError(
          "welfare range too large for the linear floor scan (" +
          std::to_string(welfare_ceiling) + " > " +
          std::to_string(kMaxGreedyScan) + ")");
    }
    ScanChoice best_kept;
    ScanChoice best_cover;
    for (long long floor = welfare_ceiling; floor >= 0; --floor) {
      std::vector<CoverageRun> runs;
      std::vector<SubsetCandidate> candidates;
      for (int r = 0; r < options.amplify; ++r) {
        const std::uint64_t run_seed =
            options.seed ^ (0x9E3779B97F4A7C15ULL *
                            static_cast<std::uint64_t>(floor + 1)) ^
            static_cast<std::uint64_t>(r);
        try {
          SubsetCandidate candidate = GreedyMaximizeCoverage(
              view, floor, budget_cap, run_seed, orders);
          runs.push_back({candidate.outcome, candidate.cover});
          candidates.push_back(std::move(candidate));
        } catch (const InfeasibleError&) {
          // This floor is out of greedy reach; lower floors may work.
        }
      }
      if (candidates.empty()) continue;
      const AmplifyReport report = AmplifyRuns(runs, options.eps0);
      ScanChoice choice;
      choice.kept = candidates[report.best_index].cover >= cover_threshold;
      choice.floor = floor;
      choice.candidate = candidates[report.best_index];
      choice.tail_bound = report.tail_bound;
      if (choice.kept &&
          (!best_kept.kept || choice.candidate.Beats(best_kept.candidate))) {
        best_kept = choice;
      }
      if (best_cover.candidate.welfare < 0 ||
          choice.candidate.cover > best_cover.candidate.cover) {
        best_cover = choice;
      }
    }
    if (best_kept.kept) {
      chosen = best_kept;
    } else if (best_cover.candidate.welfare >= 0) {
      chosen = best_cover;  // documented fallback
    } else {
      throw InfeasibleError("greedy scan produced no candidates");
    }
  }

  PipelineResult result;
  result.pre_completion = chosen.candidate.outcome;
  result.pre_completion_cover = chosen.candidate.cover;
  result.achieved_welfare_floor = chosen.floor;
  result.amplify_tail_bound = chosen.tail_bound;
  result.outcome = Df1CompleteImpl(view, chosen.candidate.outcome, orders);
  return result;
}

}  // namespace

FairnessView MakeFairnessView(const Instance& instance,
                              const FairShareProfile& shares) {
  FairnessView view;
  view.instance = &instance;
  view.shares = &shares;
  view.budget = instance.budget;
  view.district_budgets.reserve(instance.districts.size());
  for (const District& d : instance.districts) {
    view.district_budgets.push_back(d.budget_share);
  }
  return view;
}

FairnessView MakeFairnessView(const Instance& instance,
                              const ScaledInstance& scaled) {
  FairnessView view;
  view.instance = &instance;
  view.shares = &scaled.shares;
  view.district_budgets = scaled.district_budgets;
  view.budget = scaled.budget;
  return view;
}

ResidualResult ComputeResidual(const Instance& instance,
                               const FairShareProfile& shares, int district,
                               const Outcome& outcome) {
  return ResidualWithWitness(instance, district, shares.value(district),
                             FundedFlags(instance, outcome),
                             DensityOrder(instance, district));
}

CoverageReport ComputeCoverage(const FairnessView& view,
                               const Outcome& outcome) {
  const Instance& instance = *view.instance;
  const std::vector<char> funded = FundedFlags(instance, outcome);
  CoverageReport report;
  report.total_cover = 0;
  for (int i = 0; i < instance.num_districts(); ++i) {
    ResidualResult r =
        ResidualWithWitness(instance, i, view.shares->value(i), funded,
                            DensityOrder(instance, i));
    CoverageReport::DistrictRow row;
    row.residual = r.residual;
    row.cover = view.district_budgets[i] - r.residual;
    row.witness = std::move(r.witness);
    report.total_cover += row.cover;
    report.districts.push_back(std::move(row));
  }
  return report;
}

CoverageReport ComputeCoverage(const Instance& instance,
                               const FairShareProfile& shares,
                               const Outcome& outcome) {
  return ComputeCoverage(MakeFairnessView(instance, shares), outcome);
}

Outcome Df1Complete(const FairnessView& view, const Outcome& outcome) {
  return Df1CompleteImpl(view, outcome, AllDensityOrders(*view.instance));
}

Outcome Df1Complete(const Instance& instance, const FairShareProfile& shares,
                    const Outcome& outcome) {
  return Df1Complete(MakeFairnessView(instance, shares), outcome);
}

Outcome MaximizeCoverage(const FairnessView& view, const Df1pQuery& query) {
  const std::vector<std::vector<int>> orders =
      AllDensityOrders(*view.instance);
  if (query.subroutine == CoverSubroutine::kExact) {
    return ExactMaximizeCoverage(view, query.welfare_floor, query.budget_cap,
                                 orders)
        .outcome;
  }
  return GreedyMaximizeCoverage(view, query.welfare_floor, query.budget_cap,
                                query.seed, orders)
      .outcome;
}

Outcome MaximizeCoverage(const Instance& instance,
                         const FairShareProfile& shares,
                         const Df1pQuery& query) {
  return MaximizeCoverage(MakeFairnessView(instance, shares), query);
}

AmplifyReport AmplifyRuns(const std::vector<CoverageRun>& runs, double eps0) {
  if (runs.empty()) {
    throw ValidationError("amplification needs at least one run");
  }
  if (eps0 <= 0) {
    throw ValidationError("amplification eps0 must be positive");
  }
  AmplifyReport report;
  for (std::size_t r = 1; r < runs.size(); ++r) {
    if (runs[r].cover > runs[report.best_index].cover) report.best_index = r;
  }
  const double one_minus_inv_e = 1.0 - std::exp(-1.0);
  report.tail_bound =
      std::exp(-2.0 * eps0 * eps0 * one_minus_inv_e * one_minus_inv_e *
               static_cast<double>(runs.size()));
  return report;
}

PipelineResult SolveDf1Pipeline(const FairnessView& view,
                                const Rational& allowance,
                                const PipelineOptions& options) {
  return RunPipeline(view, allowance, options);
}

PipelineResult SolveDf1Pipeline(const Instance& instance,
                                const FairShareProfile& shares,
                                const Rational& allowance,
                                const PipelineOptions& options) {
  return RunPipeline(MakeFairnessView(instance, shares), allowance, options);
}

ScaledInstance ScaleInstance(const Instance& instance, const Rational& beta) {
  if (beta <= 0 || beta > 1) {
    throw ValidationError("beta must lie in (0, 1]");
  }
  ScaledInstance scaled;
  scaled.beta = beta;
  scaled.budget = beta * instance.budget;
  for (int i = 0; i < instance.num_districts(); ++i) {
    const Rational slice = beta * instance.districts[i].budget_share;
    scaled.district_budgets.push_back(slice);
    scaled.shares.shares.push_back(ComputeFairShare(instance, i, slice));
  }
  return scaled;
}

PipelineResult SolveWithinBudget(const Instance& instance,
                                 const Rational& beta,
                                 const PipelineOptions& options,
                                 const std::optional<Rational>& allowance) {
  const ScaledInstance scaled = ScaleInstance(instance, beta);
  const FairnessView view = MakeFairnessView(instance, scaled);
  Rational effective_allowance(0);
  if (allowance.has_value()) {
    effective_allowance = *allowance;
  } else if (options.subroutine == CoverSubroutine::kLazyGreedy) {
    effective_allowance = (Rational(1) - beta) / beta;
  }
  return RunPipeline(view, effective_allowance, options);
}

}  // namespace dfpb
