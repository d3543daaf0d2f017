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

#include "dfpb/hardness.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

std::string VarName(int j) { return "y" + std::to_string(j); }

}  // namespace

void ValidateX3cInput(const X3cInput& input) {
  if (input.n < 1) {
    throw ValidationError("universe size parameter n must be at least 1");
  }
  const int universe = 3 * input.n;
  std::vector<char> covered(universe, 0);
  for (std::size_t s = 0; s < input.sets.size(); ++s) {
    std::set<int> distinct;
    for (int e : input.sets[s]) {
      if (e < 0 || e >= universe) {
        throw ValidationError("set " + std::to_string(s) +
                              " references element " + std::to_string(e) +
                              " outside the universe");
      }
      distinct.insert(e);
      covered[e] = 1;
    }
    if (distinct.size() != 3) {
      throw ValidationError("set " + std::to_string(s) +
                            " must contain 3 distinct elements");
    }
  }
  for (int e = 0; e < universe; ++e) {
    if (!covered[e]) {
      throw ValidationError("element " + std::to_string(e) +
                            " appears in no set; such instances degenerate "
                            "(the element's district would demand nothing)");
    }
  }
}

X3cReduction ReduceX3c(const X3cInput& input) {
  ValidateX3cInput(input);
  const int n = input.n;
  const int m = static_cast<int>(input.sets.size());
  const long long dummy_scale = 3LL * m * n + 1;  // outweighs all real votes
  const int real_districts = 3 * n;
  const int num_districts = real_districts + static_cast<int>(dummy_scale);
  const int dummy_projects = 2 * n + static_cast<int>(dummy_scale);
  const int num_projects = m + dummy_projects;

  X3cReduction reduction;
  Instance& instance = reduction.instance;
  instance.budget = real_districts + dummy_scale;

  for (int j = 0; j < num_projects; ++j) {
    const std::string label = j < m ? "set" + std::to_string(j)
                                    : "dummy" + std::to_string(j - m);
    instance.projects.push_back({j, 1, label});
  }

  for (int i = 0; i < num_districts; ++i) {
    District d;
    d.id = i;
    d.budget_share = 1;
    d.utilities.assign(num_projects, 0);
    if (i < real_districts) {
      d.label = "element" + std::to_string(i);
      for (int j = 0; j < m; ++j) {
        for (int e : input.sets[j]) {
          if (e == i) d.utilities[j] = 1;
        }
      }
    } else {
      d.label = "filler" + std::to_string(i - real_districts);
      for (int j = m; j < num_projects; ++j) d.utilities[j] = 1;
    }
    instance.districts.push_back(std::move(d));
  }

  reduction.welfare_target =
      3LL * n + (2LL * n + dummy_scale) * dummy_scale;
  reduction.dummy_scale = dummy_scale;
  ValidateInstance(instance);
  return reduction;
}

GapInstance BuildGapInstance(const GapParams& params) {
  if (params.k < 3) {
    throw ValidationError(
        "gap construction needs k >= 3 (at least two real districts)");
  }
  if (params.epsilon <= 0 || params.epsilon >= 1) {
    throw ValidationError(
        "epsilon must lie strictly between 0 and 1 (the fractional witness "
        "keeps every coordinate within [0, 1])");
  }
  if (params.dummy_utility < 1) {
    throw ValidationError("dummy utility must be at least 1");
  }

  const int real = params.k - 1;  // districts 0..real-1, projects likewise
  const int num_projects = 2 * real;
  const long long scale = FloorToInt(Rational(denominator(params.epsilon)));
  const long long own = FloorToInt(Rational(scale) +
                                   Rational(numerator(params.epsilon)));

  GapInstance gap;
  Instance& instance = gap.instance;
  instance.budget = real;
  for (int j = 0; j < num_projects; ++j) {
    const std::string label = j < real ? "real" + std::to_string(j)
                                       : "dummy" + std::to_string(j - real);
    instance.projects.push_back({j, 1, label});
  }
  for (int i = 0; i < real; ++i) {
    District d;
    d.id = i;
    d.label = "ring" + std::to_string(i);
    d.budget_share = 1;
    d.utilities.assign(num_projects, 0);
    d.utilities[i] = own;                     // (1+ε)·scale
    d.utilities[(i + 1) % real] = scale;      // cyclic successor, 1·scale
    instance.districts.push_back(std::move(d));
  }
  District dummy;
  dummy.id = real;
  dummy.label = "sink";
  dummy.budget_share = 0;  // the ring districts' shares already sum to b
  dummy.utilities.assign(num_projects, 0);
  for (int j = real; j < num_projects; ++j) {
    dummy.utilities[j] = params.dummy_utility * scale;
  }
  instance.districts.push_back(std::move(dummy));

  gap.scale = scale;
  gap.witness.fractions.assign(num_projects, Rational(0));
  const Rational real_fraction = (Rational(1) + params.epsilon) / 2;
  for (int j = 0; j < real; ++j) gap.witness.fractions[j] = real_fraction;
  for (int j = real; j < num_projects; ++j) {
    gap.witness.fractions[j] = Rational(1) - real_fraction;
  }

  ValidateInstance(instance);
  ValidateFractionalOutcome(instance, gap.witness);
  return gap;
}

std::string FractionalLpText(const Instance& instance,
                             const FairShareProfile& shares) {
  const int m = instance.num_projects();
  std::ostringstream lp;
  lp << "\\ fractional relaxation of fair welfare maximization\n";
  lp << "Maximize\n obj:";
  for (int j = 0; j < m; ++j) {
    long long total = 0;
    for (const District& d : instance.districts) total += d.utilities[j];
    lp << (j == 0 ? " " : " + ") << total << " " << VarName(j);
  }
  lp << "\nSubject To\n";
  lp << " budget:";
  for (int j = 0; j < m; ++j) {
    lp << (j == 0 ? " " : " + ") << instance.projects[j].cost << " "
       << VarName(j);
  }
  lp << " <= " << instance.budget << "\n";
  for (int i = 0; i < instance.num_districts(); ++i) {
    lp << " fair_" << i << ":";
    bool first = true;
    for (int j = 0; j < m; ++j) {
      const long long u = instance.districts[i].utilities[j];
      if (u == 0) continue;
      lp << (first ? " " : " + ") << u << " " << VarName(j);
      first = false;
    }
    if (first) lp << " 0 " << VarName(0);
    lp << " >= " << shares.value(i) << "\n";
  }
  lp << "Bounds\n";
  for (int j = 0; j < m; ++j) {
    lp << " 0 <= " << VarName(j) << " <= 1\n";
  }
  lp << "End\n";
  return lp.str();
}

void ExportFractionalLp(const Instance& instance,
                        const FairShareProfile& shares,
                        const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << FractionalLpText(instance, shares);
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

FeasibilityReport CheckFractionalFeasible(const Instance& instance,
                                          const FairShareProfile& shares,
                                          const FractionalOutcome& outcome) {
  FeasibilityReport report;
  if (static_cast<int>(outcome.fractions.size()) != instance.num_projects()) {
    report.violations.push_back("length: one fraction per project required");
    return report;
  }
  for (int j = 0; j < instance.num_projects(); ++j) {
    if (outcome.fractions[j] < 0 || outcome.fractions[j] > 1) {
      report.violations.push_back("box: y" + std::to_string(j) +
                                  " outside [0, 1]");
    }
  }
  if (FractionalCost(instance, outcome) > instance.budget) {
    report.violations.push_back("budget: total fractional cost exceeds " +
                                std::to_string(instance.budget));
  }
  for (int i = 0; i < instance.num_districts(); ++i) {
    if (FractionalWelfare(instance, i, outcome) <
        Rational(shares.value(i))) {
      report.violations.push_back("fair_" + std::to_string(i) +
                                  ": district below its fair share");
    }
  }
  report.feasible = report.violations.empty();
  return report;
}

}  // namespace dfpb
