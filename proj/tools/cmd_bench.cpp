// bench subcommand: scaling table over generated graphs.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <unistd.h>

#include <fmt/format.h>

#include "graphjoin/io/generator.hpp"
#include "graphjoin/io/graph_files.hpp"
#include "report.hpp"

namespace graphjoin::cli {
namespace {

struct BenchArgs {
  std::vector<unsigned> scales{10, 11, 12, 13, 14};
  std::string semantics = "both";
  unsigned repeat = 1;
  double timeout_s = 60;
  unsigned edge_factor = 16;
  std::uint64_t seed = 1;
  std::vector<std::string> on{"dob=dob", "company=company"};
  std::string dir;
  std::string report;
};

struct Phases {
  double load = 0, index = 0, join = 0;
};

struct Cell {
  bool timed_out = false;
  std::vector<Phases> runs;
  engine::OpCounters counters;
  std::size_t result_vertices = 0, result_edges = 0;
};

Cell run_cell(const std::string& lv, const std::string& le, const std::string& rv,
              const std::string& re, const std::vector<std::pair<std::string, std::string>>& on,
              EdgeSemantics semantics, const BenchArgs& args, unsigned threads) {
  Cell cell;
  for (unsigned r = 0; r < std::max(1u, args.repeat); ++r) {
    const auto start = Clock::now();
    engine::EngineOptions options;
    options.threads = threads;
    options.deadline = start + std::chrono::duration_cast<Clock::duration>(
                                   std::chrono::duration<double>(args.timeout_s));
    GraphDatabase db;
    // Same schema on both sides: only the join keys may be shared, as in an
    // SQL equi-join of two copies of one table.
    io::LoadOptions right_options;
    right_options.attribute_prefix = "r_";
    for (const auto& [l, r] : on) right_options.unprefixed.insert(r);
    const auto left = io::load_graph_pair(db, lv, le);
    const auto right = io::load_graph_pair(db, rv, re, right_options);
    const double parse_s = seconds_since(start);
    try {
      const auto result =
          engine::equi_join(db, left.component, right.component, on, semantics, options);
      cell.runs.push_back({parse_s + result.times.load_ms / 1000.0, result.times.index_ms / 1000.0,
                           result.times.join_ms / 1000.0});
      cell.counters = result.counters;
      const GraphView g = db.get_graph(result.result.component);
      cell.result_vertices = g.vertices().size();
      cell.result_edges = g.edges().size();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kTimeout) throw;
      cell.timed_out = true;
      return cell;
    }
  }
  return cell;
}

std::pair<double, double> min_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return {v.front(), v[v.size() / 2]};
}

std::string render(const Cell& cell, double Phases::*phase, unsigned repeat, double limit) {
  if (cell.timed_out) return fmt::format(">{}s", limit);
  std::vector<double> v;
  for (const Phases& p : cell.runs) v.push_back(p.*phase);
  const auto [lo, mid] = min_median(v);
  return repeat > 1 ? fmt::format("{:.3f}/{:.3f}", lo, mid) : fmt::format("{:.3f}", mid);
}

std::uint64_t work(const engine::OpCounters& c) {
  return c.bucket_visits + c.vertex_comparisons + c.edge_comparisons + c.fill_checks;
}

int run_bench(const Globals& globals, const BenchArgs& args) {
  const auto on = parse_on(args.on);
  std::vector<EdgeSemantics> semantics;
  if (args.semantics == "both" || args.semantics == "conj") semantics.push_back(EdgeSemantics::kConjunctive);
  if (args.semantics == "both" || args.semantics == "disj") semantics.push_back(EdgeSemantics::kDisjunctive);
  if (semantics.empty()) throw UsageError("--semantics must be conj, disj or both");
  if (args.scales.empty()) throw UsageError("--scales needs at least one scale");

  namespace fs = std::filesystem;
  const fs::path dir = args.dir.empty()
                           ? fs::temp_directory_path() / fmt::format("graphjoin-bench-{}", ::getpid())
                           : fs::path(args.dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, fmt::format("cannot create {}: {}", dir.string(), ec.message()));

  const unsigned threads = globals.thread_cap();
  std::string header = fmt::format("{:>5} {:>8} {:>9}", "scale", "|V|", "|E|");
  for (EdgeSemantics s : semantics) {
    const char* tag = s == EdgeSemantics::kConjunctive ? "conj" : "disj";
    header += fmt::format(" | {:>13} {:>13} {:>13} {:>12} {:>12} {:>9}", fmt::format("{} load", tag),
                          "index", "join", "vertex cmp", "edge cmp", "fills");
  }
  fmt::print("{}\n", header);

  Json rows = Json::array();
  bool counters_ordered = true;
  for (unsigned scale : args.scales) {
    io::GeneratorParams params;
    params.scale = scale;
    params.edge_factor = args.edge_factor;
    io::apply_config(params, globals.config);
    params.scale = scale;
    params.edge_factor = args.edge_factor;
    const std::string lv = (dir / fmt::format("s{}_left.csv", scale)).string();
    const std::string le = (dir / fmt::format("s{}_left.tsv", scale)).string();
    const std::string rv = (dir / fmt::format("s{}_right.csv", scale)).string();
    const std::string re = (dir / fmt::format("s{}_right.tsv", scale)).string();
    params.seed = args.seed;
    const io::GeneratedGraph left = io::generate(params);
    io::write_generated(left, lv, le);
    params.seed = args.seed + 1;
    io::write_generated(io::generate(params), rv, re);

    std::string line = fmt::format("{:>5} {:>8} {:>9}", scale, left.rows.size(), left.edges.size());
    Json row{{"scale", scale}, {"vertices", left.rows.size()}, {"edges", left.edges.size()}};
    std::vector<Cell> cells;
    for (EdgeSemantics s : semantics) {
      Cell cell = run_cell(lv, le, rv, re, on, s, args, threads);
      auto counter = [&](std::uint64_t v) { return cell.timed_out ? std::string("-") : std::to_string(v); };
      line += fmt::format(" | {:>13} {:>13} {:>13} {:>12} {:>12} {:>9}",
                          render(cell, &Phases::load, args.repeat, args.timeout_s),
                          render(cell, &Phases::index, args.repeat, args.timeout_s),
                          render(cell, &Phases::join, args.repeat, args.timeout_s),
                          counter(cell.counters.vertex_comparisons),
                          counter(cell.counters.edge_comparisons),
                          counter(cell.counters.fill_edge_emissions));
      Json j{{"semantics", to_string(s)}, {"timed_out", cell.timed_out}};
      if (!cell.timed_out) {
        Json runs = Json::array();
        for (const Phases& p : cell.runs) runs.push_back({{"load", p.load}, {"index", p.index}, {"join", p.join}});
        j["runs_s"] = runs;
        j["counters"] = to_json(cell.counters);
        j["result"] = {{"vertices", cell.result_vertices}, {"edges", cell.result_edges}};
      }
      row[to_string(s)] = j;
      cells.push_back(std::move(cell));
    }
    if (cells.size() == 2 && !cells[0].timed_out && !cells[1].timed_out &&
        work(cells[0].counters) > work(cells[1].counters)) {
      counters_ordered = false;
    }
    fmt::print("{}\n", line);
    std::fflush(stdout);
    rows.push_back(std::move(row));
  }
  if (semantics.size() == 2) {
    fmt::print("conjunctive work <= disjunctive work on every scale: {}\n",
               counters_ordered ? "yes" : "NO");
  }
  if (args.dir.empty()) fs::remove_all(dir, ec);
  if (!args.report.empty()) {
    write_json(args.report, Json{{"config",
                                  {{"on", args.on}, {"repeat", args.repeat}, {"timeout_s", args.timeout_s},
                                   {"edge_factor", args.edge_factor}, {"seed", args.seed},
                                   {"threads", threads}}},
                                 {"rows", rows}});
  }
  return counters_ordered ? kOk : kFailure;
}

}  // namespace

void add_bench(CLI::App& app, Globals& globals) {
  auto args = std::make_shared<BenchArgs>();
  auto* cmd = app.add_subcommand("bench", "Scaling table over generated R-MAT graphs");
  cmd->add_option("--scales", args->scales, "log2 vertex counts")->delimiter(',');
  auto* semantics = cmd->add_option("--semantics", args->semantics, "conj | disj | both");
  auto* repeat = cmd->add_option("--repeat", args->repeat, "Runs per cell (min/median reported)");
  auto* timeout = cmd->add_option("--timeout", args->timeout_s, "Seconds per cell");
  auto* factor = cmd->add_option("--edge-factor", args->edge_factor, "Edges per vertex");
  auto* seed = cmd->add_option("--seed", args->seed, "Generator seed (right operand uses seed+1)");
  cmd->add_option("--on", args->on, "left_attr=right_attr (repeatable)");
  cmd->add_option("--dir", args->dir, "Keep generated files here");
  cmd->add_option("--report", args->report, "Write a JSON report here");
  cmd->callback([&globals, args, semantics, repeat, timeout, factor, seed] {
    globals.load_config();
    config_default(globals, semantics, "semantics", args->semantics);
    config_default(globals, repeat, "repeat", args->repeat);
    config_default(globals, timeout, "timeout", args->timeout_s);
    config_default(globals, factor, "edge_factor", args->edge_factor);
    config_default(globals, seed, "seed", args->seed);
    command_status() = run_bench(globals, *args);
  });
}

}  // namespace graphjoin::cli
