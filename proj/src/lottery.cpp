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

#include "dfpb/lottery.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

long long ComputeSwMax(const Instance& instance, const FairShareProfile&,
                       SwMaxMode mode) {
  if (mode == SwMaxMode::kFeasibleKnapsack) {
    return MaxFeasibleWelfare(instance);
  }
  long long total = 0;
  for (const District& d : instance.districts) {
    for (long long u : d.utilities) total += u;
  }
  return total;
}

long long ComputeIterations(const MwConfig& config, int districts,
                            long long sw_max) {
  if (config.iteration_override.has_value()) {
    if (*config.iteration_override < 1) {
      throw ValidationError("iteration override must be positive");
    }
    return *config.iteration_override;
  }
  const double eps = RationalToDouble(config.epsilon);
  const double t = 4.0 * std::log(static_cast<double>(districts)) *
                   static_cast<double>(sw_max) *
                   static_cast<double>(sw_max) / (eps * eps);
  return std::max(1LL, static_cast<long long>(std::ceil(t)));
}

// Exact proportions from float weights: convert each weight exactly
// (doubles are dyadic rationals), then normalize so the sum is
// exactly 1.
std::vector<Rational> ExactProportions(const std::vector<double>& weights) {
  std::vector<Rational> proportions;
  proportions.reserve(weights.size());
  Rational total(0);
  for (double w : weights) {
    Rational r = RationalFromDouble(w);
    if (r < 0) r = 0;
    proportions.push_back(r);
    total += r;
  }
  if (total == 0) {
    // Degenerate: fall back to uniform.
    const Rational uniform(1, static_cast<long long>(weights.size()));
    for (Rational& p : proportions) p = uniform;
  } else {
    for (Rational& p : proportions) p /= total;
  }
  return proportions;
}

}  // namespace

CoverKnapsackQuery BlendDistricts(const Instance& instance,
                                  const FairShareProfile& shares,
                                  const std::vector<Rational>& proportions) {
  const int m = instance.num_projects();
  const int k = instance.num_districts();
  CoverKnapsackQuery query;
  query.cost_cap = instance.budget;
  query.cover_weights.assign(m, Rational(0));
  query.cover_threshold = 0;
  for (int i = 0; i < k; ++i) {
    if (proportions[i] == 0) continue;
    const auto& utilities = instance.districts[i].utilities;
    for (int j = 0; j < m; ++j) {
      if (utilities[j] != 0) {
        query.cover_weights[j] += proportions[i] * utilities[j];
      }
    }
    query.cover_threshold += proportions[i] * shares.value(i);
  }
  return query;
}

std::pair<Lottery, MwTrace> RunMwLottery(const Instance& instance,
                                         const FairShareProfile& shares,
                                         const MwConfig& config) {
  if (config.epsilon <= 0) {
    throw ValidationError("epsilon must be positive");
  }
  const int k = instance.num_districts();
  const long long sw_max =
      ComputeSwMax(instance, shares, config.sw_max_mode);
  const long long iterations = ComputeIterations(config, k, sw_max);

  MwTrace trace;
  trace.epsilon = config.epsilon;
  trace.sw_max = sw_max;
  trace.iterations = iterations;

  // Learning rate for losses normalized into [-1, 1]; capped for
  // numeric hygiene (beyond the cap the fairness slack is vacuous).
  const double eps = RationalToDouble(config.epsilon);
  const double rate =
      sw_max > 0 ? std::min(eps / (2.0 * static_cast<double>(sw_max)), 0.5)
                 : 0.0;

  std::vector<double> weights(k, 1.0);
  std::map<std::vector<int>, long long> outcome_counts;
  for (long long t = 0; t < iterations; ++t) {
    MwIteration step;
    step.weights = weights;
    step.proportions = ExactProportions(weights);
    CoverKnapsackQuery query =
        BlendDistricts(instance, shares, step.proportions);
    step.blended_threshold = query.cover_threshold;
    // Feasible by construction: the union of the district witnesses
    // satisfies every blended constraint within budget.
    step.chosen = SolveCoverKnapsack(instance, query).outcome;

    step.mistakes.reserve(k);
    double weight_sum = 0.0;
    for (int i = 0; i < k; ++i) {
      const long long mistake =
          Welfare(instance, i, step.chosen) - shares.value(i);
      step.mistakes.push_back(mistake);
      if (sw_max > 0) {
        weights[i] *= std::exp(-rate * static_cast<double>(mistake) /
                               static_cast<double>(sw_max));
      }
      weight_sum += weights[i];
    }
    for (double& w : weights) w /= weight_sum;  // keep magnitudes sane

    ++outcome_counts[step.chosen.members];
    trace.steps.push_back(std::move(step));
  }

  Lottery lottery;
  for (const auto& [members, count] : outcome_counts) {
    lottery.entries.push_back(
        {Outcome{members}, Rational(count, iterations)});
  }
  return {std::move(lottery), std::move(trace)};
}

RegretReport MwRegretCheck(const MwTrace& trace) {
  const long long iterations = trace.iterations;
  const int k =
      trace.steps.empty() ? 0 : static_cast<int>(trace.steps[0].mistakes.size());
  RegretReport report;
  report.average_blend_gain = 0;
  report.average_mistake.assign(k, Rational(0));
  for (const MwIteration& step : trace.steps) {
    for (int i = 0; i < k; ++i) {
      report.average_blend_gain += step.proportions[i] * step.mistakes[i];
      report.average_mistake[i] += step.mistakes[i];
    }
  }
  report.average_blend_gain /= iterations;
  for (Rational& avg : report.average_mistake) avg /= iterations;

  bool first = true;
  for (int i = 0; i < k; ++i) {
    const Rational slack =
        trace.epsilon + report.average_mistake[i] - report.average_blend_gain;
    if (first || slack < report.worst_slack) report.worst_slack = slack;
    first = false;
  }
  report.inequality_holds = !first && report.worst_slack >= 0;
  return report;
}

}  // namespace dfpb
