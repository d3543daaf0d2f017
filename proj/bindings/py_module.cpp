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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "dfpb/core.hpp"
#include "dfpb/df1.hpp"
#include "dfpb/error.hpp"
#include "dfpb/exact_solver.hpp"
#include "dfpb/fair_shares.hpp"
#include "dfpb/hardness.hpp"
#include "dfpb/io.hpp"
#include "dfpb/lottery.hpp"
#include "dfpb/rational.hpp"
#include "dfpb/uga.hpp"

namespace py = pybind11;

namespace {

// Rationals cross the boundary as canonical "p/q" strings so python
// callers never see rounded values.
std::string ShareString(const dfpb::District& d) {
  return dfpb::FormatRational(d.budget_share);
}

dfpb::FairShareProfile Profile(const dfpb::Instance& instance) {
  return dfpb::ComputeFairShares(instance);
}

}  // namespace

PYBIND11_MODULE(_dfpb, m) {
  m.doc() = "district-fair participatory budgeting solvers";

  py::register_exception<dfpb::ValidationError>(m, "ValidationError");
  py::register_exception<dfpb::CapabilityError>(m, "CapabilityError");
  py::register_exception<dfpb::InfeasibleError>(m, "InfeasibleError");
  py::register_exception<dfpb::IoError>(m, "IoError");

  py::class_<dfpb::Project>(m, "Project")
      .def_readonly("id", &dfpb::Project::id)
      .def_readonly("cost", &dfpb::Project::cost)
      .def_readonly("label", &dfpb::Project::label);

  py::class_<dfpb::District>(m, "District")
      .def_readonly("id", &dfpb::District::id)
      .def_readonly("label", &dfpb::District::label)
      .def_readonly("utilities", &dfpb::District::utilities)
      .def_property_readonly("budget_share", &ShareString);

  py::class_<dfpb::Instance>(m, "Instance")
      .def_readonly("budget", &dfpb::Instance::budget)
      .def_readonly("projects", &dfpb::Instance::projects)
      .def_readonly("districts", &dfpb::Instance::districts)
      .def("num_projects", &dfpb::Instance::num_projects)
      .def("num_districts", &dfpb::Instance::num_districts)
      .def("__repr__", [](const dfpb::Instance& instance) {
        return "<Instance budget=" + std::to_string(instance.budget) + " m=" +
               std::to_string(instance.num_projects()) + " k=" +
               std::to_string(instance.num_districts()) + ">";
      });

  m.def("load_instance", &dfpb::LoadInstance, py::arg("path"),
        "Read and validate an instance JSON file.");
  m.def(
      "instance_from_json",
      [](const std::string& text, const std::string& base_dir) {
        return dfpb::InstanceFromJson(nlohmann::json::parse(text), base_dir);
      },
      py::arg("text"), py::arg("base_dir") = std::string("."),
      "Parse and validate an instance from a JSON string.");
  m.def(
      "instance_to_json",
      [](const dfpb::Instance& instance) {
        return dfpb::CanonicalDump(dfpb::InstanceToJson(instance));
      },
      py::arg("instance"), "Canonical JSON text for an instance.");

  m.def(
      "cost",
      [](const dfpb::Instance& instance, const std::vector<int>& members) {
        return dfpb::Cost(instance, dfpb::MakeOutcome(members));
      },
      py::arg("instance"), py::arg("members"));
  m.def(
      "welfare",
      [](const dfpb::Instance& instance, int district,
         const std::vector<int>& members) {
        return dfpb::Welfare(instance, district, dfpb::MakeOutcome(members));
      },
      py::arg("instance"), py::arg("district"), py::arg("members"));
  m.def(
      "total_welfare",
      [](const dfpb::Instance& instance, const std::vector<int>& members) {
        return dfpb::TotalWelfare(instance, dfpb::MakeOutcome(members));
      },
      py::arg("instance"), py::arg("members"));

  m.def(
      "fair_shares",
      [](const dfpb::Instance& instance) {
        const dfpb::FairShareProfile profile = Profile(instance);
        std::vector<std::pair<long long, std::vector<int>>> rows;
        for (const dfpb::DistrictShare& share : profile.shares) {
          rows.emplace_back(share.value, share.witness.members);
        }
        return rows;
      },
      py::arg("instance"),
      "Per district: (fair share value, lexicographically smallest witness).");

  m.def(
      "is_fair",
      [](const dfpb::Instance& instance, const std::vector<int>& members) {
        return dfpb::IsDistrictFair(instance, Profile(instance),
                                    dfpb::MakeOutcome(members));
      },
      py::arg("instance"), py::arg("members"));
  m.def(
      "is_fair_up_to_one",
      [](const dfpb::Instance& instance, const std::vector<int>& members) {
        return dfpb::IsDistrictFairUpToOne(instance, Profile(instance),
                                           dfpb::MakeOutcome(members));
      },
      py::arg("instance"), py::arg("members"));

  m.def(
      "solve_exact",
      [](const dfpb::Instance& instance, int district_limit) {
        return dfpb::SolveExactDp(instance, Profile(instance), district_limit)
            .members;
      },
      py::arg("instance"),
      py::arg("district_limit") = dfpb::kDefaultDpDistrictLimit,
      "Max-welfare fair outcome (demand DP; throws CapabilityError when the "
      "district count exceeds the limit).");

  m.def(
      "solve_lottery",
      [](const dfpb::Instance& instance, const std::string& epsilon,
         std::optional<long long> iterations, bool feasible_sw_max) {
        dfpb::MwConfig config;
        config.epsilon = dfpb::ParseRational(epsilon);
        config.iteration_override = iterations;
        config.sw_max_mode = feasible_sw_max
                                 ? dfpb::SwMaxMode::kFeasibleKnapsack
                                 : dfpb::SwMaxMode::kAllProjects;
        const auto [lottery, trace] =
            dfpb::RunMwLottery(instance, Profile(instance), config);
        std::vector<std::pair<std::string, std::vector<int>>> entries;
        for (const dfpb::LotteryEntry& entry : lottery.entries) {
          entries.emplace_back(dfpb::FormatRational(entry.probability),
                               entry.outcome.members);
        }
        return entries;
      },
      py::arg("instance"), py::arg("epsilon"),
      py::arg("iterations") = std::nullopt,
      py::arg("feasible_sw_max") = false,
      "Multiplicative-weights lottery: [(probability 'p/q', members)].");

  m.def(
      "solve_df1",
      [](const dfpb::Instance& instance, const std::string& mode,
         const std::string& allowance, const std::string& beta, int amplify,
         std::uint64_t seed) {
        dfpb::PipelineOptions options;
        options.subroutine = mode == "greedy"
                                 ? dfpb::CoverSubroutine::kLazyGreedy
                                 : dfpb::CoverSubroutine::kExact;
        options.amplify = amplify;
        options.seed = seed;
        dfpb::PipelineResult result;
        if (!beta.empty()) {
          std::optional<dfpb::Rational> slack;
          if (!allowance.empty()) slack = dfpb::ParseRational(allowance);
          result = dfpb::SolveWithinBudget(
              instance, dfpb::ParseRational(beta), options, slack);
        } else {
          const dfpb::Rational slack = allowance.empty()
                                           ? dfpb::Rational(0)
                                           : dfpb::ParseRational(allowance);
          result = dfpb::SolveDf1Pipeline(instance, Profile(instance), slack,
                                          options);
        }
        py::dict out;
        out["members"] = result.outcome.members;
        out["welfare_floor"] = result.achieved_welfare_floor;
        out["pre_completion"] = result.pre_completion.members;
        out["pre_completion_cover"] =
            dfpb::FormatRational(result.pre_completion_cover);
        out["amplify_tail_bound"] = result.amplify_tail_bound;
        return out;
      },
      py::arg("instance"), py::arg("mode") = std::string("exact"),
      py::arg("allowance") = std::string(), py::arg("beta") = std::string(),
      py::arg("amplify") = 1, py::arg("seed") = 0,
      "Coverage pipeline with fair-up-to-one completion.");

  m.def(
      "solve_uga",
      [](const dfpb::Instance& instance) {
        const dfpb::UnanimityCertificate cert = dfpb::CheckUnanimity(instance);
        if (!cert.applicable()) {
          throw dfpb::CapabilityError(cert.violation());
        }
        return dfpb::SolveUga(instance, Profile(instance)).members;
      },
      py::arg("instance"),
      "Greedy for unanimous districts with unit-cost projects.");

  m.def(
      "reduce_x3c",
      [](int n, const std::vector<std::array<int, 3>>& sets) {
        dfpb::X3cInput input;
        input.n = n;
        input.sets = sets;
        const dfpb::X3cReduction reduction = dfpb::ReduceX3c(input);
        return std::make_pair(reduction.instance, reduction.welfare_target);
      },
      py::arg("n"), py::arg("sets"),
      "Reduce an exact-3-cover question: (instance, welfare target).");

  m.def(
      "build_gap",
      [](int k, const std::string& epsilon, long long dummy_utility) {
        dfpb::GapParams params;
        params.k = k;
        params.epsilon = dfpb::ParseRational(epsilon);
        params.dummy_utility = dummy_utility;
        const dfpb::GapInstance gap = dfpb::BuildGapInstance(params);
        std::vector<std::string> fractions;
        for (const dfpb::Rational& x : gap.witness.fractions) {
          fractions.push_back(dfpb::FormatRational(x));
        }
        return std::make_tuple(gap.instance, fractions, gap.scale);
      },
      py::arg("k"), py::arg("epsilon"), py::arg("dummy_utility"),
      "Integrality-gap family: (instance, fractional witness, scale).");

  m.def(
      "lp_text",
      [](const dfpb::Instance& instance) {
        return dfpb::FractionalLpText(instance, Profile(instance));
      },
      py::arg("instance"), "Fractional fairness relaxation in LP format.");
}
