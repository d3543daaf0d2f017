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

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfpb/core.hpp"

namespace dfpb {

// One approval ballot.  district_id / approvals carry labels that are
// resolved against the declared districts and projects.
struct BallotRecord {
  std::string voter_id;
  std::string district_id;
  std::vector<std::string> approvals;
};

// --- Instances -------------------------------------------------------

// Reads a schema-v1 instance file:
//   {
//     "schema_version": 1,
//     "budget": <int>,
//     "projects":  [{"label": ..., "cost": <int>}, ...],
//     "districts": [{"label": ..., "budget_share": <int>|"p/q",
//                    "utilities": [<int>, ...]}, ...],
//     "ballots": "relative/path.csv"   // alternative to utilities
//   }
// Exactly one of {per-district "utilities", top-level "ballots"} must
// be present; ballot paths resolve relative to the instance file.
// Throws IoError on filesystem/parse failures and ValidationError on
// schema or model violations (messages name the offending field).
Instance LoadInstance(const std::string& path);

// Same, from already-parsed JSON; base_dir resolves ballot references.
Instance InstanceFromJson(const nlohmann::json& doc,
                          const std::string& base_dir);

nlohmann::json InstanceToJson(const Instance& instance);
void WriteInstance(const std::string& path, const Instance& instance);

// --- Ballots ---------------------------------------------------------

// CSV with header `voter_id,district_id,approvals`; approvals is a
// `;`-separated list of project labels (possibly empty).  No quoting:
// labels must not contain ',' or ';'.  Errors carry 1-based line
// numbers.
std::vector<BallotRecord> ParseBallotsCsv(std::istream& in);

// utilities[i][j] = number of voters in district i approving project j.
// Throws ValidationError on duplicate voter ids or unresolvable labels.
std::vector<std::vector<long long>> AggregateBallots(
    const std::vector<Project>& projects,
    const std::vector<std::string>& district_labels,
    const std::vector<BallotRecord>& ballots);

// --- Outcomes & lotteries --------------------------------------------

nlohmann::json OutcomeToJson(const Outcome& outcome);
Outcome OutcomeFromJson(const nlohmann::json& doc);
void WriteOutcome(const std::string& path, const Outcome& outcome);
Outcome LoadOutcome(const std::string& path);

// Lottery entries serialize sorted by member list with probabilities
// as exact "num/den" strings.
nlohmann::json LotteryToJson(const Lottery& lottery);
Lottery LotteryFromJson(const nlohmann::json& doc);
void WriteLottery(const std::string& path, const Lottery& lottery);
Lottery LoadLottery(const std::string& path);

// --- Canonical JSON --------------------------------------------------

// Key-sorted, 2-space indented, trailing newline: re-serializing a
// loaded document is byte-identical.
std::string CanonicalDump(const nlohmann::json& doc);
void WriteJsonFile(const std::string& path, const nlohmann::json& doc);
nlohmann::json ReadJsonFile(const std::string& path);

}  // namespace dfpb
