// generate, load and index subcommands.

#include <iostream>

#include <fmt/format.h>

#include "graphjoin/engine/index.hpp"
#include "graphjoin/io/generator.hpp"
#include "graphjoin/io/graph_files.hpp"
#include "report.hpp"

namespace graphjoin::cli {
namespace {

engine::HashMode parse_hash_mode(const std::string& text) {
  if (text == "stable") return engine::HashMode::kStable;
  if (text == "constant") return engine::HashMode::kConstant;
  throw UsageError("--hash must be stable or constant");
}

}  // namespace

void add_generate(CLI::App& app, Globals& globals) {
  struct Args {
    io::GeneratorParams params;
    std::string vertices, edges, attributes;
    std::uint64_t dob_domain = 0, company_domain = 0;
  };
  auto args = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("generate", "Write an R-MAT graph with person attributes");
  auto* scale = cmd->add_option("--scale", args->params.scale, "log2 of the vertex count");
  auto* factor = cmd->add_option("--edge-factor", args->params.edge_factor, "Edges per vertex");
  auto* seed = cmd->add_option("--seed", args->params.seed, "Random seed");
  auto* attributes =
      cmd->add_option("--attributes", args->attributes, "Comma-separated attribute list");
  auto* dob = cmd->add_option("--dob-domain", args->dob_domain, "Distinct dob values");
  auto* company = cmd->add_option("--company-domain", args->company_domain, "Distinct companies");
  cmd->add_option("--out-vertices", args->vertices, "Vertex CSV path")->required();
  cmd->add_option("--out-edges", args->edges, "Edge TSV path")->required();
  cmd->callback([&globals, args, scale, factor, seed, attributes, dob, company] {
    globals.load_config();
    io::GeneratorParams params = args->params;
    // Config first, flags on top.
    io::apply_config(params, globals.config);
    std::map<std::string, std::string> flags;
    if (scale->count()) flags["scale"] = std::to_string(args->params.scale);
    if (factor->count()) flags["edge_factor"] = std::to_string(args->params.edge_factor);
    if (seed->count()) flags["seed"] = std::to_string(args->params.seed);
    if (attributes->count()) flags["attributes"] = args->attributes;
    if (dob->count()) flags["dob_domain"] = std::to_string(args->dob_domain);
    if (company->count()) flags["company_domain"] = std::to_string(args->company_domain);
    io::apply_config(params, flags);

    const auto start = Clock::now();
    const io::GeneratedGraph g = io::generate(params);
    io::write_generated(g, args->vertices, args->edges);
    fmt::print("generated {} vertices, {} edges (scale {}, edge factor {}, seed {}) in {:.3f} s\n",
               g.rows.size(), g.edges.size(), params.scale, params.edge_factor, params.seed,
               seconds_since(start));
    command_status() = kOk;
  });
}

void add_load(CLI::App& app, Globals& globals) {
  struct Args {
    std::string vertices, edges, report;
    bool keep_id = false;
  };
  auto args = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("load", "Parse and validate a vertex CSV / edge TSV pair");
  cmd->add_option("--vertices", args->vertices, "Vertex CSV")->required();
  cmd->add_option("--edges", args->edges, "Edge TSV")->required();
  cmd->add_flag("--keep-id", args->keep_id, "Keep the id column as an attribute");
  cmd->add_option("--report", args->report, "Write a JSON report here");
  cmd->callback([&globals, args] {
    globals.load_config();
    GraphDatabase db;
    const auto start = Clock::now();
    io::LoadOptions options;
    options.keep_id = args->keep_id;
    const auto loaded = io::load_graph_pair(db, args->vertices, args->edges, options);
    const double load_s = seconds_since(start);
    db.validate_component(loaded.component);
    const GraphView g = db.get_graph(loaded.component);
    fmt::print("loaded {} vertices, {} edges, {} attributes in {:.3f} s; graph is valid\n",
               g.vertices().size(), g.edges().size(), loaded.header.size() - (args->keep_id ? 0 : 1),
               load_s);
    if (!args->report.empty()) {
      write_json(args->report, Json{{"timings_s", {{"load", load_s}}},
                                    {"vertices", g.vertices().size()},
                                    {"edges", g.edges().size()},
                                    {"header", loaded.header}});
    }
    command_status() = kOk;
  });
}

void add_index(CLI::App& app, Globals& globals) {
  struct Args {
    std::string vertices, edges, out, hash = "stable";
    std::vector<std::string> keys;
  };
  auto args = std::make_shared<Args>();
  auto* cmd = app.add_subcommand("index", "Build and write the binary engine index of one graph");
  cmd->add_option("--vertices", args->vertices, "Vertex CSV")->required();
  cmd->add_option("--edges", args->edges, "Edge TSV")->required();
  cmd->add_option("--key", args->keys, "Join key attribute (repeatable, in order)")->required();
  cmd->add_option("--out", args->out, "Index file")->required();
  cmd->add_option("--hash", args->hash, "stable | constant");
  cmd->callback([&globals, args] {
    globals.load_config();
    GraphDatabase db;
    auto start = Clock::now();
    const auto loaded = io::load_graph_pair(db, args->vertices, args->edges);
    const auto operand =
        engine::load(db.get_graph(loaded.component), args->keys, parse_hash_mode(args->hash));
    const double load_s = seconds_since(start);
    start = Clock::now();
    const engine::EngineIndex index = engine::build_index(operand);
    const auto bytes = index.serialize();
    const double index_s = seconds_since(start);
    index.write(args->out);
    const auto stats = index.stats();
    fmt::print("indexed {} vertices ({} skipped), {} out-edges into {} buckets, {} bytes\n",
               stats.vertices, operand.stats.vertices_skipped, stats.edges, stats.buckets,
               bytes.size());
    fmt::print("load {:.3f} s, index {:.3f} s\n", load_s, index_s);
    command_status() = kOk;
  });
}

}  // namespace graphjoin::cli
