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

#include "dfpb/uga.hpp"

#include <algorithm>
#include <cassert>
#include <string>
#include <vector>

#include "dfpb/df1.hpp"
#include "dfpb/error.hpp"

namespace dfpb {
namespace {

void RequireApplicable(const Instance& instance) {
  const UnanimityCertificate certificate = CheckUnanimity(instance);
  if (!certificate.applicable()) {
    throw CapabilityError("unanimous greedy solver not applicable: " +
                          certificate.violation());
  }
}

long long CoverGain(const Instance& instance, const FairShareProfile& shares,
                    int project, std::vector<char>& funded) {
  if (funded[project]) return 0;
  // With unit costs and unanimity, each district's residual is
  // (remaining demand)/(voter count) — an integer count of projects —
  // so the total coverage gain of one more project is an integer too.
  long long gain = 0;
  for (int i = 0; i < instance.num_districts(); ++i) {
    const long long u = instance.districts[i].utilities[project];
    if (u == 0) continue;
    long long have = 0;
    const auto& utilities = instance.districts[i].utilities;
    for (int j = 0; j < instance.num_projects(); ++j) {
      if (funded[j]) have += utilities[j];
    }
    const long long gap = shares.value(i) - have;
    if (gap > 0) ++gain;  // u == voter count covers one unit of demand
  }
  return gain;
}

}  // namespace

bool UnanimityCertificate::applicable() const {
  if (!unit_costs) return false;
  return std::all_of(districts.begin(), districts.end(),
                     [](const DistrictRow& row) { return row.unanimous; });
}

std::string UnanimityCertificate::violation() const {
  if (!unit_costs) return "projects must all cost 1";
  for (std::size_t i = 0; i < districts.size(); ++i) {
    if (!districts[i].unanimous) {
      return "district " + std::to_string(i) +
             " is not unanimous (utilities must be 0 or one common value)";
    }
  }
  return "";
}

UnanimityCertificate CheckUnanimity(const Instance& instance) {
  UnanimityCertificate certificate;
  certificate.unit_costs =
      std::all_of(instance.projects.begin(), instance.projects.end(),
                  [](const Project& p) { return p.cost == 1; });
  for (const District& d : instance.districts) {
    UnanimityCertificate::DistrictRow row;
    row.voter_count = *std::max_element(d.utilities.begin(),
                                        d.utilities.end());
    row.unanimous =
        std::all_of(d.utilities.begin(), d.utilities.end(), [&](long long u) {
          return u == 0 || u == row.voter_count;
        });
    certificate.districts.push_back(row);
  }
  return certificate;
}

long long ConditionalCover(const Instance& instance,
                           const FairShareProfile& shares, int project,
                           const Outcome& outcome) {
  RequireApplicable(instance);
  // Evaluate both coverage terms exactly and assert integrality; the
  // fast per-district counting below must agree.
  Outcome with = outcome;
  if (!with.contains(project)) {
    with.members.push_back(project);
    std::sort(with.members.begin(), with.members.end());
  }
  const Rational gain = ComputeCoverage(instance, shares, with).total_cover -
                        ComputeCoverage(instance, shares, outcome).total_cover;
  assert(denominator(gain) == 1 && "unanimity + unit costs imply integers");
  return FloorToInt(gain);
}

Outcome SolveUga(const Instance& instance, const FairShareProfile& shares,
                 std::vector<UgaTraceEntry>* trace) {
  RequireApplicable(instance);
  const int m = instance.num_projects();
  std::vector<long long> totals(m, 0);
  for (const District& d : instance.districts) {
    for (int j = 0; j < m; ++j) totals[j] += d.utilities[j];
  }

  std::vector<char> funded(m, 0);
  Outcome result;
  const long long rounds = std::min<long long>(instance.budget, m);
  for (long long round = 0; round < rounds; ++round) {
    int pick = -1;
    long long pick_gain = -1;
    for (int j = 0; j < m; ++j) {
      if (funded[j]) continue;
      const long long gain = CoverGain(instance, shares, j, funded);
      if (gain > pick_gain ||
          (gain == pick_gain && totals[j] > totals[pick])) {
        pick = j;
        pick_gain = gain;
      }
    }
    assert(pick >= 0);
    funded[pick] = 1;
    result.members.push_back(pick);
    if (trace != nullptr) {
      trace->push_back({pick, pick_gain, totals[pick]});
    }
  }
  std::sort(result.members.begin(), result.members.end());
  return result;
}

}  // namespace dfpb
