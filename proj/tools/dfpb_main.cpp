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

#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
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
#include "dfpb/report.hpp"
#include "dfpb/uga.hpp"

namespace {

using dfpb::FairShareProfile;
using dfpb::FormatRational;
using dfpb::Instance;
using dfpb::Outcome;
using dfpb::ParseRational;
using dfpb::Rational;

// Data for machines goes to stdout (byte-stable across runs); timings
// go to stderr so identical inputs yield identical captured output.
class WallClock {
 public:
  WallClock() : start_(std::chrono::steady_clock::now()) {}
  ~WallClock() {
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start_;
    std::cerr << "wall time: " << std::fixed << std::setprecision(3)
              << elapsed.count() << "s\n";
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Renders a solver result: text table to stdout, optional outcome file
// and machine-readable report (with the flag echo merged in).
void EmitOutcome(const Instance& instance, const FairShareProfile& shares,
                 const Outcome& outcome, const std::string& engine,
                 const Rational& total_cover, const nlohmann::json& config,
                 const std::string& out_path, const std::string& json_path,
                 const nlohmann::json& extras = nlohmann::json::object()) {
  dfpb::Report report = dfpb::BuildReport(instance, shares, outcome, engine);
  std::cout << dfpb::RenderText(report);
  std::cout << "total cover: " << FormatRational(total_cover) << "\n";
  if (!out_path.empty()) dfpb::WriteOutcome(out_path, outcome);
  if (!json_path.empty()) {
    nlohmann::json doc = dfpb::RenderJson(report);
    doc["total_cover"] = FormatRational(total_cover);
    doc["config"] = config;
    for (const auto& [key, value] : extras.items()) doc[key] = value;
    dfpb::WriteJsonFile(json_path, doc);
  }
}

struct InstanceArg {
  std::string path;

  void Attach(CLI::App* cmd) {
    cmd->add_option("instance", path, "instance JSON file")->required();
  }
  Instance Load() const { return dfpb::LoadInstance(path); }
};

// --- validate ----------------------------------------------------------

void SetupValidate(CLI::App& app) {
  auto arg = std::make_shared<InstanceArg>();
  CLI::App* cmd =
      app.add_subcommand("validate", "check an instance file and summarize it");
  arg->Attach(cmd);
  cmd->callback([arg]() {
    WallClock clock;
    const Instance instance = arg->Load();
    std::cout << "valid: " << instance.num_projects() << " projects, "
              << instance.num_districts() << " districts, budget "
              << instance.budget << "\n";
  });
}

// --- shares ------------------------------------------------------------

void SetupShares(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "shares", "per-district fair shares with knapsack witnesses");
  opts->arg.Attach(cmd);
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    std::cout << "district  share  fair  witness\n";
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < instance.num_districts(); ++i) {
      const dfpb::District& d = instance.districts[i];
      std::cout << d.label << "  " << FormatRational(d.budget_share) << "  "
                << shares.value(i) << " ";
      for (int j : shares.witness(i).members) std::cout << " " << j;
      std::cout << "\n";
      rows.push_back({{"label", d.label},
                      {"budget_share", FormatRational(d.budget_share)},
                      {"fair_share", shares.value(i)},
                      {"witness", shares.witness(i).members}});
    }
    if (!opts->json_path.empty()) {
      dfpb::WriteJsonFile(opts->json_path,
                          {{"schema_version", 1}, {"shares", rows}});
    }
  });
}

// --- solve-exact -------------------------------------------------------

void SetupSolveExact(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    int district_limit = dfpb::kDefaultDpDistrictLimit;
    std::string out_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "solve-exact", "max-welfare fair outcome (per-district demand DP)");
  opts->arg.Attach(cmd);
  cmd->add_option("--district-limit", opts->district_limit,
                  "refuse instances with more districts than this")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts->out_path, "write the outcome here");
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    const Outcome outcome =
        dfpb::SolveExactDp(instance, shares, opts->district_limit);
    const Rational cover =
        dfpb::ComputeCoverage(instance, shares, outcome).total_cover;
    EmitOutcome(instance, shares, outcome, "exact", cover,
                {{"district_limit", opts->district_limit}}, opts->out_path,
                opts->json_path);
  });
}

// --- solve-lottery -----------------------------------------------------

nlohmann::json LotteryReportJson(const Instance& instance,
                                 const FairShareProfile& shares,
                                 const dfpb::Lottery& lottery,
                                 const dfpb::MwTrace& trace) {
  nlohmann::json expected = nlohmann::json::array();
  bool ex_ante_df = true;
  for (int i = 0; i < instance.num_districts(); ++i) {
    Rational mean(0);
    for (const dfpb::LotteryEntry& entry : lottery.entries) {
      mean += entry.probability * dfpb::Welfare(instance, i, entry.outcome);
    }
    const bool ok = mean >= Rational(shares.value(i)) - trace.epsilon;
    ex_ante_df = ex_ante_df && ok;
    expected.push_back({{"label", instance.districts[i].label},
                        {"fair_share", shares.value(i)},
                        {"expected_welfare", FormatRational(mean)},
                        {"within_epsilon", ok}});
  }
  nlohmann::json doc = dfpb::LotteryToJson(lottery);
  doc["engine"] = "lottery";
  doc["epsilon"] = FormatRational(trace.epsilon);
  doc["sw_max"] = trace.sw_max;
  doc["iterations"] = trace.iterations;
  doc["expected"] = expected;
  doc["ex_ante_df"] = ex_ante_df;
  return doc;
}

nlohmann::json MwTraceJson(const dfpb::MwTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const dfpb::MwIteration& step : trace.steps) {
    nlohmann::json proportions = nlohmann::json::array();
    for (const Rational& p : step.proportions) {
      proportions.push_back(FormatRational(p));
    }
    steps.push_back({{"weights", step.weights},
                     {"proportions", proportions},
                     {"blended_threshold", FormatRational(step.blended_threshold)},
                     {"chosen", step.chosen.members},
                     {"mistakes", step.mistakes}});
  }
  const dfpb::RegretReport regret = dfpb::MwRegretCheck(trace);
  nlohmann::json mistakes = nlohmann::json::array();
  for (const Rational& m : regret.average_mistake) {
    mistakes.push_back(FormatRational(m));
  }
  return nlohmann::json{
      {"schema_version", 1},
      {"epsilon", FormatRational(trace.epsilon)},
      {"sw_max", trace.sw_max},
      {"iterations", trace.iterations},
      {"steps", steps},
      {"regret",
       {{"average_blend_gain", FormatRational(regret.average_blend_gain)},
        {"average_mistake", mistakes},
        {"worst_slack", FormatRational(regret.worst_slack)},
        {"inequality_holds", regret.inequality_holds}}}};
}

void SetupSolveLottery(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string epsilon;
    long long iterations = 0;
    std::string sw_max_mode = "all";
    std::string out_path;
    std::string trace_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "solve-lottery",
      "multiplicative-weights lottery over max-welfare fair outcomes");
  opts->arg.Attach(cmd);
  cmd->add_option("--epsilon", opts->epsilon,
                  "ex-ante fairness slack, e.g. 1 or 1/2")
      ->required();
  cmd->add_option("--iterations", opts->iterations,
                  "override the iteration count")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--swmax", opts->sw_max_mode,
                  "welfare-range bound: every project, or feasible knapsack")
      ->check(CLI::IsMember({"all", "feasible"}));
  cmd->add_option("--out", opts->out_path, "write the lottery here");
  cmd->add_option("--trace", opts->trace_path, "write the iteration trace here");
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    dfpb::MwConfig config;
    config.epsilon = ParseRational(opts->epsilon);
    if (opts->iterations > 0) config.iteration_override = opts->iterations;
    config.sw_max_mode = opts->sw_max_mode == "feasible"
                             ? dfpb::SwMaxMode::kFeasibleKnapsack
                             : dfpb::SwMaxMode::kAllProjects;
    const auto [lottery, trace] = dfpb::RunMwLottery(instance, shares, config);

    const nlohmann::json doc =
        LotteryReportJson(instance, shares, lottery, trace);
    std::cout << "engine: lottery\n"
              << "epsilon: " << FormatRational(trace.epsilon) << "\n"
              << "sw_max: " << trace.sw_max << "\n"
              << "iterations: " << trace.iterations << "\n"
              << "support: " << lottery.entries.size() << " outcomes\n";
    for (const dfpb::LotteryEntry& entry : lottery.entries) {
      std::cout << "  " << FormatRational(entry.probability) << " ->";
      for (int j : entry.outcome.members) std::cout << " " << j;
      std::cout << "\n";
    }
    std::cout << "district  fair  expected  within-epsilon\n";
    for (const auto& row : doc["expected"]) {
      std::cout << row["label"].get<std::string>() << "  "
                << row["fair_share"].get<long long>() << "  "
                << row["expected_welfare"].get<std::string>() << "  "
                << (row["within_epsilon"].get<bool>() ? "yes" : "no") << "\n";
    }
    std::cout << "ex-ante fair within epsilon: "
              << (doc["ex_ante_df"].get<bool>() ? "yes" : "no") << "\n";

    if (!opts->out_path.empty()) dfpb::WriteLottery(opts->out_path, lottery);
    if (!opts->trace_path.empty()) {
      dfpb::WriteJsonFile(opts->trace_path, MwTraceJson(trace));
    }
    if (!opts->json_path.empty()) dfpb::WriteJsonFile(opts->json_path, doc);
  });
}

// --- solve-df1 ---------------------------------------------------------

void SetupSolveDf1(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string mode = "exact";
    std::string allowance;
    std::string beta;
    int amplify = 1;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "solve-df1",
      "coverage pipeline: welfare-floor scan + fair-up-to-one completion");
  opts->arg.Attach(cmd);
  cmd->add_option("--mode", opts->mode, "coverage subroutine")
      ->check(CLI::IsMember({"exact", "greedy"}));
  cmd->add_option("--allowance", opts->allowance,
                  "accept cover >= budget - allowance*budget (default 0, "
                  "or (1-beta)/beta when --beta is given in greedy mode)");
  cmd->add_option("--beta", opts->beta,
                  "scale every district share by this factor in (0,1] so the "
                  "completed outcome fits the original budget");
  cmd->add_option("--amplify", opts->amplify,
                  "independent greedy runs per welfare floor")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", opts->seed, "base seed for greedy tie-shuffling");
  cmd->add_option("--out", opts->out_path, "write the outcome here");
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    dfpb::PipelineOptions pipeline;
    pipeline.subroutine = opts->mode == "greedy"
                              ? dfpb::CoverSubroutine::kLazyGreedy
                              : dfpb::CoverSubroutine::kExact;
    pipeline.amplify = opts->amplify;
    pipeline.seed = opts->seed;

    nlohmann::json config{{"mode", opts->mode},
                          {"amplify", opts->amplify},
                          {"seed", opts->seed}};
    dfpb::PipelineResult result;
    FairShareProfile shares;
    Rational cover;
    if (!opts->beta.empty()) {
      const Rational beta = ParseRational(opts->beta);
      std::optional<Rational> allowance;
      if (!opts->allowance.empty()) allowance = ParseRational(opts->allowance);
      result = dfpb::SolveWithinBudget(instance, beta, pipeline, allowance);
      const dfpb::ScaledInstance scaled = dfpb::ScaleInstance(instance, beta);
      shares = scaled.shares;
      const dfpb::FairnessView view = dfpb::MakeFairnessView(instance, scaled);
      cover = dfpb::ComputeCoverage(view, result.outcome).total_cover;
      config["beta"] = FormatRational(beta);
      config["allowance"] =
          FormatRational(allowance ? *allowance : (1 - beta) / beta);
    } else {
      const Rational allowance =
          opts->allowance.empty() ? Rational(0) : ParseRational(opts->allowance);
      shares = dfpb::ComputeFairShares(instance);
      result = dfpb::SolveDf1Pipeline(instance, shares, allowance, pipeline);
      cover = dfpb::ComputeCoverage(instance, shares, result.outcome).total_cover;
      config["allowance"] = FormatRational(allowance);
    }

    nlohmann::json extras{
        {"achieved_welfare_floor", result.achieved_welfare_floor},
        {"pre_completion_members", result.pre_completion.members},
        {"pre_completion_cover", FormatRational(result.pre_completion_cover)},
        {"amplify_tail_bound", result.amplify_tail_bound}};
    EmitOutcome(instance, shares, result.outcome, "df1", cover, config,
                opts->out_path, opts->json_path, extras);
    std::cout << "welfare floor reached: " << result.achieved_welfare_floor
              << "\n";
  });
}

// --- solve-uga ---------------------------------------------------------

void SetupSolveUga(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string out_path;
    std::string trace_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "solve-uga", "greedy for unanimous districts and unit-cost projects");
  opts->arg.Attach(cmd);
  cmd->add_option("--out", opts->out_path, "write the outcome here");
  cmd->add_option("--trace", opts->trace_path, "write the pick trace here");
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const dfpb::UnanimityCertificate cert = dfpb::CheckUnanimity(instance);
    if (!cert.applicable()) {
      throw dfpb::CapabilityError(cert.violation());
    }
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    std::vector<dfpb::UgaTraceEntry> trace;
    const Outcome outcome = dfpb::SolveUga(
        instance, shares, opts->trace_path.empty() ? nullptr : &trace);
    const Rational cover =
        dfpb::ComputeCoverage(instance, shares, outcome).total_cover;
    EmitOutcome(instance, shares, outcome, "uga", cover,
                nlohmann::json::object(), opts->out_path, opts->json_path);
    if (!opts->trace_path.empty()) {
      nlohmann::json steps = nlohmann::json::array();
      for (const dfpb::UgaTraceEntry& entry : trace) {
        steps.push_back({{"project", entry.project},
                         {"cover_gain", entry.cover_gain},
                         {"welfare", entry.welfare}});
      }
      dfpb::WriteJsonFile(opts->trace_path,
                          {{"schema_version", 1}, {"steps", steps}});
    }
  });
}

// --- gen-x3c -----------------------------------------------------------

dfpb::X3cInput ParseX3cSpec(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("sets")) {
    throw dfpb::ValidationError(
        "cover spec must be an object with fields 'n' and 'sets'");
  }
  if (!doc["n"].is_number_integer()) {
    throw dfpb::ValidationError("cover spec field 'n' must be an integer");
  }
  dfpb::X3cInput input;
  input.n = doc["n"].get<int>();
  if (!doc["sets"].is_array()) {
    throw dfpb::ValidationError("cover spec field 'sets' must be an array");
  }
  for (const auto& entry : doc["sets"]) {
    if (!entry.is_array() || entry.size() != 3 ||
        !entry[0].is_number_integer() || !entry[1].is_number_integer() ||
        !entry[2].is_number_integer()) {
      throw dfpb::ValidationError(
          "each cover set must be an array of 3 integers");
    }
    input.sets.push_back(
        {entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
  }
  return input;
}

void SetupGenX3c(CLI::App& app) {
  struct Opts {
    std::string spec_path;
    std::string out_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "gen-x3c", "reduce an exact-3-cover question to a fairness instance");
  cmd->add_option("--spec", opts->spec_path,
                  "JSON file {\"n\": N, \"sets\": [[a,b,c], ...]}")
      ->required();
  cmd->add_option("--out", opts->out_path, "write the instance here")
      ->required();
  cmd->add_option("--json", opts->json_path, "write a JSON summary here");
  cmd->callback([opts]() {
    WallClock clock;
    const dfpb::X3cInput input =
        ParseX3cSpec(dfpb::ReadJsonFile(opts->spec_path));
    const dfpb::X3cReduction reduction = dfpb::ReduceX3c(input);
    dfpb::WriteInstance(opts->out_path, reduction.instance);
    std::cout << "cover question: n=" << input.n << ", " << input.sets.size()
              << " sets\n"
              << "instance: " << reduction.instance.num_projects()
              << " projects, " << reduction.instance.num_districts()
              << " districts, budget " << reduction.instance.budget << "\n"
              << "welfare target: " << reduction.welfare_target << "\n"
              << "wrote " << opts->out_path << "\n";
    if (!opts->json_path.empty()) {
      dfpb::WriteJsonFile(opts->json_path,
                          {{"schema_version", 1},
                           {"n", input.n},
                           {"num_sets", input.sets.size()},
                           {"dummy_scale", reduction.dummy_scale},
                           {"welfare_target", reduction.welfare_target},
                           {"instance", opts->out_path}});
    }
  });
}

// --- gen-gap -----------------------------------------------------------

void SetupGenGap(CLI::App& app) {
  struct Opts {
    int k = 5;
    std::string eps = "1/10";
    long long dummy_utility = 1000;
    std::string out_path;
    std::string witness_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "gen-gap",
      "family whose fractional relaxation beats every integral outcome");
  cmd->add_option("--k", opts->k, "district count (>= 3; last is a dummy)")
      ->check(CLI::Range(3, 1000000));
  cmd->add_option("--eps", opts->eps, "gap parameter in (0,1), e.g. 1/10");
  cmd->add_option("--B", opts->dummy_utility, "dummy-project payoff")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts->out_path, "write the instance here")
      ->required();
  cmd->add_option("--witness", opts->witness_path,
                  "write the fractional witness here");
  cmd->add_option("--json", opts->json_path, "write a JSON summary here");
  cmd->callback([opts]() {
    WallClock clock;
    dfpb::GapParams params;
    params.k = opts->k;
    params.epsilon = ParseRational(opts->eps);
    params.dummy_utility = opts->dummy_utility;
    const dfpb::GapInstance gap = dfpb::BuildGapInstance(params);
    dfpb::WriteInstance(opts->out_path, gap.instance);
    Rational witness_welfare(0);
    for (int i = 0; i < gap.instance.num_districts(); ++i) {
      witness_welfare +=
          dfpb::FractionalWelfare(gap.instance, i, gap.witness);
    }
    std::cout << "gap instance: k=" << opts->k << ", eps=" << opts->eps
              << ", B=" << opts->dummy_utility << ", utility scale "
              << gap.scale << "\n"
              << "fractional witness welfare: "
              << FormatRational(witness_welfare) << "\n"
              << "wrote " << opts->out_path << "\n";
    if (!opts->witness_path.empty()) {
      nlohmann::json fractions = nlohmann::json::array();
      for (const Rational& x : gap.witness.fractions) {
        fractions.push_back(FormatRational(x));
      }
      dfpb::WriteJsonFile(
          opts->witness_path,
          {{"schema_version", 1}, {"fractions", fractions}});
    }
    if (!opts->json_path.empty()) {
      dfpb::WriteJsonFile(
          opts->json_path,
          {{"schema_version", 1},
           {"k", opts->k},
           {"epsilon", FormatRational(params.epsilon)},
           {"dummy_utility", opts->dummy_utility},
           {"scale", gap.scale},
           {"witness_welfare", FormatRational(witness_welfare)},
           {"instance", opts->out_path}});
    }
  });
}

// --- export-lp ---------------------------------------------------------

void SetupExportLp(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string out_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "export-lp", "write the fractional fairness relaxation in LP format");
  opts->arg.Attach(cmd);
  cmd->add_option("--out", opts->out_path, "LP file to write")->required();
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    dfpb::ExportFractionalLp(instance, shares, opts->out_path);
    std::cout << "wrote " << opts->out_path << " ("
              << instance.num_districts() + 1 << " rows, "
              << instance.num_projects() << " columns)\n";
  });
}

// --- report ------------------------------------------------------------

void SetupReport(CLI::App& app) {
  struct Opts {
    InstanceArg arg;
    std::string outcome_path;
    std::string json_path;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = app.add_subcommand(
      "report", "re-validate an outcome file against an instance");
  opts->arg.Attach(cmd);
  cmd->add_option("outcome", opts->outcome_path, "outcome JSON file")
      ->required();
  cmd->add_option("--json", opts->json_path, "write a JSON report here");
  cmd->callback([opts]() {
    WallClock clock;
    const Instance instance = opts->arg.Load();
    const Outcome outcome = dfpb::LoadOutcome(opts->outcome_path);
    dfpb::ValidateOutcome(instance, outcome);
    const FairShareProfile shares = dfpb::ComputeFairShares(instance);
    const bool feasible = dfpb::IsBudgetFeasible(instance, outcome);
    const Rational cover =
        dfpb::ComputeCoverage(instance, shares, outcome).total_cover;
    dfpb::Report report = dfpb::BuildReport(instance, shares, outcome, "report");
    std::cout << dfpb::RenderText(report);
    std::cout << "total cover: " << FormatRational(cover) << "\n";
    std::cout << "budget-feasible: " << (feasible ? "yes" : "no") << "\n";
    if (!opts->json_path.empty()) {
      nlohmann::json doc = dfpb::RenderJson(report);
      doc["total_cover"] = FormatRational(cover);
      doc["budget_feasible"] = feasible;
      dfpb::WriteJsonFile(opts->json_path, doc);
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"district-fair participatory budgeting solvers"};
  app.require_subcommand(1);
  int threads = 1;  // engines are single-threaded today; the flag pins the
                    // contract (default 1) for future parallel subroutines
  app.add_option("--threads", threads, "worker threads (default 1)")
      ->check(CLI::PositiveNumber)
      ->envname("DFPB_THREADS");

  SetupValidate(app);
  SetupShares(app);
  SetupSolveExact(app);
  SetupSolveLottery(app);
  SetupSolveDf1(app);
  SetupSolveUga(app);
  SetupGenX3c(app);
  SetupGenGap(app);
  SetupExportLp(app);
  SetupReport(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const dfpb::IoError& e) {
    std::cerr << "dfpb: error: io: " << e.what() << "\n";
    return 2;
  } catch (const dfpb::InfeasibleError& e) {
    std::cerr << "dfpb: error: infeasible: " << e.what() << "\n";
    return 1;
  } catch (const dfpb::CapabilityError& e) {
    std::cerr << "dfpb: error: capability: " << e.what() << "\n";
    return 1;
  } catch (const dfpb::ValidationError& e) {
    std::cerr << "dfpb: error: validation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "dfpb: error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
