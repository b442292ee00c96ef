// join subcommand.

#include <filesystem>
#include <iostream>

#include <fmt/format.h>

#include "graphjoin/engine/explain.hpp"
#include "graphjoin/io/graph_files.hpp"
#include "graphjoin/kernels/intersect.hpp"
#include "report.hpp"

namespace graphjoin::cli {
namespace {

struct JoinArgs {
  std::string left_vertices, left_edges, right_vertices, right_edges;
  std::vector<std::string> on;
  std::string semantics = "conj";
  std::string engine = "optimized";
  std::string out;
  std::string right_prefix;
  bool keep_id = false;
};

EdgeSemantics parse_semantics(const std::string& text) {
  if (text == "conj" || text == "conjunctive") return EdgeSemantics::kConjunctive;
  if (text == "disj" || text == "disjunctive") return EdgeSemantics::kDisjunctive;
  throw UsageError("--semantics must be conj or disj");
}

std::size_t count_fills(const GraphDatabase& db, ComponentId c) {
  std::size_t n = 0;
  for (ElementId e : db.get_graph(c).edges()) {
    for (ElementId leaf : db.leaves(e)) n += db.is_fill(leaf) ? 1 : 0;
  }
  return n;
}

int run_join(const Globals& globals, const JoinArgs& args) {
  const auto on = parse_on(args.on);
  const EdgeSemantics semantics = parse_semantics(args.semantics);
  if (args.engine != "optimized" && args.engine != "oracle") {
    throw UsageError("--engine must be optimized or oracle");
  }

  GraphDatabase db;
  auto start = Clock::now();
  io::LoadOptions left_options, right_options;
  left_options.keep_id = right_options.keep_id = args.keep_id;
  left_options.tag_prefix = "L:";
  right_options.tag_prefix = "R:";
  right_options.attribute_prefix = args.right_prefix;
  for (const auto& [l, r] : on) right_options.unprefixed.insert(r);
  const auto left = io::load_graph_pair(db, args.left_vertices, args.left_edges, left_options);
  const auto right = io::load_graph_pair(db, args.right_vertices, args.right_edges, right_options);
  const double parse_s = seconds_since(start);

  Json report;
  report["config"] = {{"left_vertices", args.left_vertices}, {"left_edges", args.left_edges},
                      {"right_vertices", args.right_vertices}, {"right_edges", args.right_edges},
                      {"on", args.on}, {"semantics", to_string(semantics)},
                      {"engine", args.engine}, {"right_prefix", args.right_prefix}, {"threads", globals.thread_cap()},
                      {"kernel", std::string(kernels::to_string(kernels::selected_isa()))}};
  JoinResult result;
  std::optional<engine::EngineJoinResult> fast;
  if (args.engine == "optimized") {
    engine::EngineOptions options;
    options.threads = globals.thread_cap();
    fast = engine::equi_join(db, left.component, right.component, on, semantics, options);
    result = fast->result;
    report["timings_s"] = {{"load", parse_s + fast->times.load_ms / 1000.0},
                           {"index", fast->times.index_ms / 1000.0},
                           {"join", fast->times.join_ms / 1000.0}};
    report["counters"] = to_json(fast->counters);
  } else {
    start = Clock::now();
    result = logical::graph_join(db, left.component, right.component,
                                 {relational::ThetaPredicate::equalities(on), semantics});
    report["timings_s"] = {{"load", parse_s}, {"index", 0.0}, {"join", seconds_since(start)}};
    report["counters"] = nullptr;
  }

  const GraphView g = db.get_graph(result.component);
  const std::size_t fills = count_fills(db, result.component);
  report["cardinalities"] = {{"vertices", g.vertices().size()},
                             {"edges", g.edges().size()},
                             {"fill_edges", fills}};

  if (!args.out.empty()) {
    io::write_join_result(db, result, args.out,
                          io::union_columns(left.header, right.header, args.keep_id));
    write_json((std::filesystem::path(args.out) / "report.json").string(), report);
  }

  fmt::print("{} join, {} engine: {} vertices, {} edges ({} fill)\n", to_string(semantics),
             args.engine, g.vertices().size(), g.edges().size(), fills);
  const auto& t = report["timings_s"];
  fmt::print("load {:.3f} s  index {:.3f} s  join {:.3f} s\n", t["load"].get<double>(),
             t["index"].get<double>(), t["join"].get<double>());
  if (fast) std::cout << engine::to_text(engine::explain(*fast));
  return kOk;
}

}  // namespace

void add_join(CLI::App& app, Globals& globals) {
  auto args = std::make_shared<JoinArgs>();
  auto* cmd = app.add_subcommand("join", "Join two graphs on attribute equalities");
  cmd->add_option("--left-vertices", args->left_vertices, "Left vertex CSV")->required();
  cmd->add_option("--left-edges", args->left_edges, "Left edge TSV")->required();
  cmd->add_option("--right-vertices", args->right_vertices, "Right vertex CSV")->required();
  cmd->add_option("--right-edges", args->right_edges, "Right edge TSV")->required();
  cmd->add_option("--on", args->on, "left_attr=right_attr (repeatable)")->required();
  cmd->add_option("--semantics", args->semantics, "conj | disj");
  cmd->add_option("--engine", args->engine, "optimized | oracle");
  cmd->add_option("--out", args->out, "Directory for vertices.csv, edges.tsv, report.json");
  cmd->add_flag("--keep-id", args->keep_id, "Keep id columns as attributes");
  cmd->add_option("--right-prefix", args->right_prefix,
                  "Prefix for right attributes other than the join keys");
  cmd->callback([&globals, args] {
    globals.load_config();
    command_status() = run_join(globals, *args);
  });
}

}  // namespace graphjoin::cli
