// verify subcommand: fuzz the join laws.

#include <iostream>

#include <fmt/format.h>

#include "graphjoin/verify.hpp"
#include "report.hpp"

namespace graphjoin::cli {
namespace {

struct VerifyArgs {
  verify::Options options;
  std::string mutate;
  std::optional<std::uint64_t> trial_seed;
  std::string report;
};

/// Runs every law once on one trial seed.
verify::Report single_trial(const verify::Options& options, std::uint64_t seed) {
  verify::Report report;
  auto add = [&](std::string law, std::optional<std::string> failure, bool gating = true) {
    verify::LawResult r;
    r.law = std::move(law);
    r.trials = 1;
    r.gating = gating;
    if (failure) {
      r.failures = 1;
      r.counterexample = std::move(failure);
      r.failing_seed = seed;
    }
    report.laws.push_back(std::move(r));
  };
  for (EdgeSemantics s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
    auto d = verify::engine_matches_oracle(seed, options, s, engine::HashMode::kStable);
    if (!d) d = verify::engine_matches_oracle(seed, options, s, engine::HashMode::kConstant);
    add(fmt::format("engine = reference join, {}", to_string(s)), d);
    add(fmt::format("commutativity, {}", to_string(s)), verify::commutes(seed, options, s));
    add(fmt::format("associativity, {}", to_string(s)), verify::associates(seed, options, s),
        s == EdgeSemantics::kConjunctive);
  }
  add("containment", verify::contained(seed, options));
  return report;
}

int run_verify(const VerifyArgs& args) {
  if (!args.mutate.empty() && args.mutate != "skip-recheck") {
    throw UsageError("--mutate only knows skip-recheck");
  }
  if (args.options.trials == 0 && !args.trial_seed) {
    std::cerr << "warning: --trials 0, nothing was checked; passing vacuously\n";
    return kOk;
  }
  const verify::Report report = args.trial_seed ? single_trial(args.options, *args.trial_seed)
                                                : verify::run(args.options);
  Json laws = Json::array();
  for (const auto& law : report.laws) {
    const char* status = law.failures == 0 ? "PASS" : (law.gating ? "FAIL" : "WARN");
    fmt::print("{} {} ({}/{} trials failed){}\n", status, law.law, law.failures, law.trials,
               law.gating ? "" : " [non-gating]");
    if (law.counterexample) {
      fmt::print("  first counterexample, trial seed {}:\n{}\n", *law.failing_seed,
                 *law.counterexample);
      fmt::print("  reproduce: graphjoin verify --trial-seed {} --max-vertices {} --max-edges {}{}\n",
                 *law.failing_seed, args.options.max_vertices, args.options.max_edges,
                 args.options.skip_theta_recheck ? " --mutate skip-recheck" : "");
    }
    laws.push_back({{"law", law.law},
                    {"trials", law.trials},
                    {"failures", law.failures},
                    {"gating", law.gating},
                    {"failing_seed", law.failing_seed ? Json(*law.failing_seed) : Json(nullptr)}});
  }
  const bool passed = report.passed();
  fmt::print("{}\n", passed ? "all gating laws hold" : "law violation found");
  if (!args.report.empty()) {
    write_json(args.report, Json{{"seed", args.options.seed},
                                 {"trials", args.options.trials},
                                 {"passed", passed},
                                 {"laws", laws}});
  }
  return passed ? kOk : kFailure;
}

}  // namespace

void add_verify(CLI::App& app, Globals& globals) {
  auto args = std::make_shared<VerifyArgs>();
  auto* cmd = app.add_subcommand("verify", "Fuzz engine equivalence and the join laws");
  auto* trials = cmd->add_option("--trials", args->options.trials, "Trials per law");
  auto* vertices = cmd->add_option("--max-vertices", args->options.max_vertices,
                                   "Vertices per random graph");
  auto* edges = cmd->add_option("--max-edges", args->options.max_edges, "Edges per random graph");
  auto* seed = cmd->add_option("--seed", args->options.seed, "Run seed");
  cmd->add_option("--trial-seed", args->trial_seed, "Re-run one trial from a reported seed");
  cmd->add_option("--report", args->report, "Write a JSON report here");
  cmd->add_option("--mutate", args->mutate, "Inject an engine fault (skip-recheck)")
      ->group("");  // hidden
  cmd->callback([&globals, args, trials, vertices, edges, seed] {
    globals.load_config();
    config_default(globals, trials, "trials", args->options.trials);
    config_default(globals, vertices, "max_vertices", args->options.max_vertices);
    config_default(globals, edges, "max_edges", args->options.max_edges);
    config_default(globals, seed, "seed", args->options.seed);
    args->options.threads = globals.thread_cap();
    args->options.skip_theta_recheck = args->mutate == "skip-recheck";
    command_status() = run_verify(*args);
  });
}

}  // namespace graphjoin::cli
