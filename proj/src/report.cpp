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

#include "dfpb/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "dfpb/rational.hpp"

namespace dfpb {

Report BuildReport(const Instance& instance, const FairShareProfile& shares,
                   const Outcome& outcome, const std::string& engine) {
  Report report;
  report.engine = engine;
  report.outcome = outcome;
  report.total_cost = Cost(instance, outcome);
  report.total_welfare = TotalWelfare(instance, outcome);
  report.df = true;
  report.df1 = true;
  for (int i = 0; i < instance.num_districts(); ++i) {
    DistrictRow row;
    row.label = instance.districts[i].label;
    row.budget_share = instance.districts[i].budget_share;
    row.fair_share = shares.value(i);
    row.achieved = Welfare(instance, i, outcome);
    row.deficit = std::max(0LL, row.fair_share - row.achieved);
    row.df1 = row.achieved + BestUnfundedUtility(instance, i, outcome) >=
              row.fair_share;
    report.df = report.df && row.deficit == 0;
    report.df1 = report.df1 && row.df1;
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string RenderText(const Report& report) {
  std::ostringstream out;
  out << "engine: " << report.engine << "\n";
  std::size_t label_width = 8;
  for (const DistrictRow& row : report.rows) {
    label_width = std::max(label_width, row.label.size());
  }
  out << std::left << std::setw(static_cast<int>(label_width)) << "district"
      << std::right << std::setw(14) << "share" << std::setw(12) << "fair"
      << std::setw(12) << "achieved" << std::setw(12) << "deficit"
      << std::setw(6) << "df1" << "\n";
  for (const DistrictRow& row : report.rows) {
    out << std::left << std::setw(static_cast<int>(label_width)) << row.label
        << std::right << std::setw(14) << FormatRational(row.budget_share)
        << std::setw(12) << row.fair_share << std::setw(12) << row.achieved
        << std::setw(12) << row.deficit << std::setw(6)
        << (row.df1 ? "yes" : "no") << "\n";
  }
  out << "members:";
  for (int id : report.outcome.members) out << " " << id;
  out << "\n";
  out << "total cost: " << report.total_cost << "\n";
  out << "total welfare: " << report.total_welfare << "\n";
  out << "district-fair: " << (report.df ? "yes" : "no") << "\n";
  out << "district-fair up to one: " << (report.df1 ? "yes" : "no") << "\n";
  if (report.wall_seconds > 0.0) {
    out << "wall time: " << std::fixed << std::setprecision(3)
        << report.wall_seconds << "s\n";
  }
  return out.str();
}

nlohmann::json RenderJson(const Report& report) {
  nlohmann::json districts = nlohmann::json::array();
  for (const DistrictRow& row : report.rows) {
    districts.push_back({{"label", row.label},
                         {"budget_share", FormatRational(row.budget_share)},
                         {"fair_share", row.fair_share},
                         {"achieved", row.achieved},
                         {"deficit", row.deficit},
                         {"df1", row.df1}});
  }
  return nlohmann::json{{"schema_version", 1},
                        {"engine", report.engine},
                        {"districts", districts},
                        {"members", report.outcome.members},
                        {"total_cost", report.total_cost},
                        {"total_welfare", report.total_welfare},
                        {"df", report.df},
                        {"df1", report.df1}};
}

}  // namespace dfpb
