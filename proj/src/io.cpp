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

#include "dfpb/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "dfpb/error.hpp"

namespace dfpb {
namespace {

constexpr int kSchemaVersion = 1;

void RequireField(const nlohmann::json& doc, const std::string& key,
                  const std::string& where) {
  if (!doc.contains(key)) {
    throw ValidationError(where + ": missing field '" + key + "'");
  }
}

long long IntField(const nlohmann::json& doc, const std::string& key,
                   const std::string& where) {
  RequireField(doc, key, where);
  if (!doc[key].is_number_integer()) {
    throw ValidationError(where + "." + key + ": expected an integer");
  }
  return doc[key].get<long long>();
}

std::string StringField(const nlohmann::json& doc, const std::string& key,
                        const std::string& where) {
  RequireField(doc, key, where);
  if (!doc[key].is_string()) {
    throw ValidationError(where + "." + key + ": expected a string");
  }
  return doc[key].get<std::string>();
}

Rational ShareField(const nlohmann::json& doc, const std::string& where) {
  RequireField(doc, "budget_share", where);
  const auto& value = doc["budget_share"];
  if (value.is_number_integer()) {
    return Rational(value.get<long long>());
  }
  if (value.is_string()) {
    return ParseRational(value.get<std::string>());
  }
  throw ValidationError(where +
                        ".budget_share: expected an integer or 'p/q' string");
}

void CheckSchemaVersion(const nlohmann::json& doc, const std::string& what) {
  if (IntField(doc, "schema_version", what) != kSchemaVersion) {
    throw ValidationError(what + ": unsupported schema_version (want " +
                          std::to_string(kSchemaVersion) + ")");
  }
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return std::move(buffer).str();
}

void WriteFileOrThrow(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

std::vector<std::string> SplitOn(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

}  // namespace

Instance InstanceFromJson(const nlohmann::json& doc,
                          const std::string& base_dir) {
  if (!doc.is_object()) {
    throw ValidationError("instance: top-level value must be an object");
  }
  CheckSchemaVersion(doc, "instance");

  Instance instance;
  instance.budget = IntField(doc, "budget", "instance");

  RequireField(doc, "projects", "instance");
  if (!doc["projects"].is_array()) {
    throw ValidationError("instance.projects: expected an array");
  }
  int project_index = 0;
  for (const auto& entry : doc["projects"]) {
    const std::string where =
        "projects[" + std::to_string(project_index) + "]";
    Project p;
    p.id = project_index++;
    p.label = StringField(entry, "label", where);
    p.cost = IntField(entry, "cost", where);
    instance.projects.push_back(std::move(p));
  }

  RequireField(doc, "districts", "instance");
  if (!doc["districts"].is_array()) {
    throw ValidationError("instance.districts: expected an array");
  }
  const bool has_ballots = doc.contains("ballots");
  int district_index = 0;
  for (const auto& entry : doc["districts"]) {
    const std::string where =
        "districts[" + std::to_string(district_index) + "]";
    District d;
    d.id = district_index++;
    d.label = StringField(entry, "label", where);
    d.budget_share = ShareField(entry, where);
    if (entry.contains("utilities")) {
      if (has_ballots) {
        throw ValidationError(
            where + ": explicit utilities and a ballots file are mutually "
                    "exclusive");
      }
      if (!entry["utilities"].is_array()) {
        throw ValidationError(where + ".utilities: expected an array");
      }
      for (const auto& u : entry["utilities"]) {
        if (!u.is_number_integer()) {
          throw ValidationError(where + ".utilities: expected integers");
        }
        d.utilities.push_back(u.get<long long>());
      }
    } else if (!has_ballots) {
      throw ValidationError(where +
                            ": needs 'utilities' (or a top-level 'ballots' "
                            "file covering all districts)");
    }
    instance.districts.push_back(std::move(d));
  }

  if (has_ballots) {
    const std::string ballots_name =
        StringField(doc, "ballots", "instance");
    const std::filesystem::path resolved =
        std::filesystem::path(base_dir) / ballots_name;
    std::istringstream csv(ReadFileOrThrow(resolved.string()));
    const std::vector<BallotRecord> records = ParseBallotsCsv(csv);
    std::vector<std::string> district_labels;
    for (const District& d : instance.districts) {
      district_labels.push_back(d.label);
    }
    const auto utilities =
        AggregateBallots(instance.projects, district_labels, records);
    for (int i = 0; i < instance.num_districts(); ++i) {
      instance.districts[i].utilities = utilities[i];
    }
  }

  ValidateInstance(instance);
  return instance;
}

Instance LoadInstance(const std::string& path) {
  const nlohmann::json doc = ReadJsonFile(path);
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return InstanceFromJson(doc, base_dir.empty() ? "." : base_dir);
}

nlohmann::json InstanceToJson(const Instance& instance) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["budget"] = instance.budget;
  doc["projects"] = nlohmann::json::array();
  for (const Project& p : instance.projects) {
    doc["projects"].push_back({{"label", p.label}, {"cost", p.cost}});
  }
  doc["districts"] = nlohmann::json::array();
  for (const District& d : instance.districts) {
    doc["districts"].push_back({{"label", d.label},
                                {"budget_share", FormatRational(d.budget_share)},
                                {"utilities", d.utilities}});
  }
  return doc;
}

void WriteInstance(const std::string& path, const Instance& instance) {
  WriteJsonFile(path, InstanceToJson(instance));
}

std::vector<BallotRecord> ParseBallotsCsv(std::istream& in) {
  std::vector<BallotRecord> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_number == 1) {
      if (line != "voter_id,district_id,approvals") {
        throw ValidationError(
            "ballots line 1: header must be "
            "'voter_id,district_id,approvals'");
      }
      continue;
    }
    if (line.empty()) continue;
    const std::vector<std::string> fields = SplitOn(line, ',');
    if (fields.size() != 3) {
      throw ValidationError("ballots line " + std::to_string(line_number) +
                            ": expected 3 comma-separated fields");
    }
    BallotRecord record;
    record.voter_id = fields[0];
    record.district_id = fields[1];
    if (record.voter_id.empty()) {
      throw ValidationError("ballots line " + std::to_string(line_number) +
                            ": empty voter_id");
    }
    if (!fields[2].empty()) {
      record.approvals = SplitOn(fields[2], ';');
    }
    records.push_back(std::move(record));
  }
  return records;
}

std::vector<std::vector<long long>> AggregateBallots(
    const std::vector<Project>& projects,
    const std::vector<std::string>& district_labels,
    const std::vector<BallotRecord>& ballots) {
  std::map<std::string, int> project_index;
  for (const Project& p : projects) project_index[p.label] = p.id;
  std::map<std::string, int> district_index;
  for (int i = 0; i < static_cast<int>(district_labels.size()); ++i) {
    district_index[district_labels[i]] = i;
  }

  std::vector<std::vector<long long>> utilities(
      district_labels.size(), std::vector<long long>(projects.size(), 0));
  std::set<std::string> seen_voters;
  for (const BallotRecord& record : ballots) {
    if (!seen_voters.insert(record.voter_id).second) {
      throw ValidationError("duplicate ballot for voter '" +
                            record.voter_id + "'");
    }
    const auto district_it = district_index.find(record.district_id);
    if (district_it == district_index.end()) {
      throw ValidationError("ballot for voter '" + record.voter_id +
                            "' names unknown district '" +
                            record.district_id + "'");
    }
    std::set<int> approved;  // a set: approving twice is still one voter
    for (const std::string& label : record.approvals) {
      const auto project_it = project_index.find(label);
      if (project_it == project_index.end()) {
        throw ValidationError("ballot for voter '" + record.voter_id +
                              "' approves unknown project '" + label + "'");
      }
      approved.insert(project_it->second);
    }
    for (int j : approved) ++utilities[district_it->second][j];
  }
  return utilities;
}

nlohmann::json OutcomeToJson(const Outcome& outcome) {
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["members"] = outcome.members;
  return doc;
}

Outcome OutcomeFromJson(const nlohmann::json& doc) {
  CheckSchemaVersion(doc, "outcome");
  RequireField(doc, "members", "outcome");
  if (!doc["members"].is_array()) {
    throw ValidationError("outcome.members: expected an array");
  }
  std::vector<int> members;
  for (const auto& m : doc["members"]) {
    if (!m.is_number_integer()) {
      throw ValidationError("outcome.members: expected integers");
    }
    members.push_back(m.get<int>());
  }
  Outcome outcome{members};
  if (MakeOutcome(members) != outcome) {
    throw ValidationError("outcome.members: must be sorted and unique");
  }
  return outcome;
}

void WriteOutcome(const std::string& path, const Outcome& outcome) {
  WriteJsonFile(path, OutcomeToJson(outcome));
}

Outcome LoadOutcome(const std::string& path) {
  return OutcomeFromJson(ReadJsonFile(path));
}

nlohmann::json LotteryToJson(const Lottery& lottery) {
  std::vector<LotteryEntry> entries = lottery.entries;
  std::sort(entries.begin(), entries.end(),
            [](const LotteryEntry& a, const LotteryEntry& b) {
              return OutcomeLess(a.outcome, b.outcome);
            });
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["entries"] = nlohmann::json::array();
  for (const LotteryEntry& entry : entries) {
    doc["entries"].push_back(
        {{"members", entry.outcome.members},
         {"probability", FormatRational(entry.probability)}});
  }
  return doc;
}

Lottery LotteryFromJson(const nlohmann::json& doc) {
  CheckSchemaVersion(doc, "lottery");
  RequireField(doc, "entries", "lottery");
  if (!doc["entries"].is_array()) {
    throw ValidationError("lottery.entries: expected an array");
  }
  Lottery lottery;
  int index = 0;
  for (const auto& entry : doc["entries"]) {
    const std::string where = "lottery.entries[" + std::to_string(index++) +
                              "]";
    RequireField(entry, "members", where);
    std::vector<int> members;
    for (const auto& m : entry["members"]) members.push_back(m.get<int>());
    lottery.entries.push_back(
        {Outcome{members},
         ParseRational(StringField(entry, "probability", where))});
  }
  return lottery;
}

void WriteLottery(const std::string& path, const Lottery& lottery) {
  WriteJsonFile(path, LotteryToJson(lottery));
}

Lottery LoadLottery(const std::string& path) {
  return LotteryFromJson(ReadJsonFile(path));
}

std::string CanonicalDump(const nlohmann::json& doc) {
  // nlohmann::json objects iterate in key order, so dump() is already
  // key-sorted and deterministic.
  return doc.dump(2) + "\n";
}

void WriteJsonFile(const std::string& path, const nlohmann::json& doc) {
  WriteFileOrThrow(path, CanonicalDump(doc));
}

nlohmann::json ReadJsonFile(const std::string& path) {
  const std::string content = ReadFileOrThrow(path);
  try {
    return nlohmann::json::parse(content);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("cannot parse '" + path + "': " + e.what());
  }
}

}  // namespace dfpb
