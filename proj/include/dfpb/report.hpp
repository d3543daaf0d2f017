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

#include "json.hpp"

namespace dfpb {

// One row of the per-district summary: how the funded set treats
// district i relative to its guarantee.
struct DistrictRow {
  std::string label;
  Rational budget_share = 0;
  long long fair_share = 0;
  long long achieved = 0;  // welfare district i draws from the outcome
  long long deficit = 0;   // max(0, fair_share - achieved)
  bool df1 = false;        // met after the single-best-unfunded boost
};

// Aggregate view of a solver run, renderable as text or JSON.
struct Report {
  std::string engine;  // e.g. "exact", "df1", "uga"
  std::vector<DistrictRow> rows;
  Outcome outcome;
  long long total_cost = 0;
  long long total_welfare = 0;
  bool df = false;
  bool df1 = false;
  double wall_seconds = 0.0;  // render-time extra; never serialized
};

// Builds the per-district table for `outcome` against the precomputed
// fair shares.  `engine` is echoed verbatim into the report header.
Report BuildReport(const Instance& instance, const FairShareProfile& shares,
                   const Outcome& outcome, const std::string& engine);

// Fixed-width text rendering, one row per district plus totals.
std::string RenderText(const Report& report);

// Machine-readable rendering.  Timings are deliberately omitted so the
// output is byte-stable across runs.
nlohmann::json RenderJson(const Report& report);

}  // namespace dfpb
