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

#include "dfpb/core.hpp"

namespace dfpb {

inline constexpr int kDefaultDpDistrictLimit = 3;
inline constexpr int kOracleProjectLimit = 24;

// Maximum-welfare fair outcome via the per-district demanded-welfare
// dynamic program.  Feasibility states ask: "can a subset of the first
// j projects, within the remaining budget, give every district at
// least its demanded welfare?"; demands are clamped at 0 when a
// project's utility is subtracted, which bounds each axis by the fair
// share.  Memoized top-down; the reachable state space is usually far
// below the nominal (Π f_i)·m·b bound.
//
// Returned outcome is fair, budget-feasible, and welfare-optimal among
// such outcomes, ties broken by lexicographically smallest member
// list.  Throws CapabilityError when the district count exceeds
// district_limit (use the lottery or the coverage pipeline instead).
Outcome SolveExactDp(const Instance& instance, const FairShareProfile& shares,
                     int district_limit = kDefaultDpDistrictLimit);

struct OracleResult {
  long long opt_welfare = 0;
  Outcome witness;  // lexicographically smallest optimal outcome
  long long fair_outcome_count = 0;
};

// Ground truth by exhaustive subset enumeration (Gray-code order, so
// each step updates a single project).  Throws CapabilityError beyond
// kOracleProjectLimit projects.
OracleResult OracleSolve(const Instance& instance,
                         const FairShareProfile& shares);

// Max welfare over budget-feasible outcomes that are fair up to one
// project; same enumeration and limits as OracleSolve.  DF implies
// DF1, so the frontier is always at least the fair optimum.
long long OracleDf1Frontier(const Instance& instance,
                            const FairShareProfile& shares);

}  // namespace dfpb
