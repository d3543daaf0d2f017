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

#include <string>
#include <vector>

#include "dfpb/core.hpp"

namespace dfpb {

// Applicability check for the unanimous greedy solver: every project
// costs 1 and every district is unanimous, i.e. scores each project
// either 0 or its full voter count.  Voter counts are inferred as the
// district's common nonzero utility (exactly what approval-ballot
// aggregation produces); all-zero districts pass vacuously.
struct UnanimityCertificate {
  struct DistrictRow {
    long long voter_count = 0;  // 0 when the district scores nothing
    bool unanimous = false;
  };
  std::vector<DistrictRow> districts;
  bool unit_costs = false;

  bool applicable() const;
  // First human-readable reason the certificate fails, empty if none.
  std::string violation() const;
};

UnanimityCertificate CheckUnanimity(const Instance& instance);

// Integer coverage gain of funding one more project: the total
// coverage of outcome ∪ {project} minus that of outcome.  Unit costs
// and unanimity make this an integer (asserted).  Throws
// CapabilityError when the certificate fails.
long long ConditionalCover(const Instance& instance,
                           const FairShareProfile& shares, int project,
                           const Outcome& outcome);

struct UgaTraceEntry {
  int project = 0;
  long long cover_gain = 0;   // conditional coverage when picked
  long long welfare = 0;      // the project's total welfare
};

// One pick per unit of budget (stopping early if projects run out):
// the highest conditional cover, ties by total welfare, then smallest
// id.  Fair on every applicable instance and at least half of the best
// fair welfare.  The optional trace records each pick.
Outcome SolveUga(const Instance& instance, const FairShareProfile& shares,
                 std::vector<UgaTraceEntry>* trace = nullptr);

}  // namespace dfpb
