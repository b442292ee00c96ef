#include "graphjoin/verify.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <fmt/format.h>

#include "graphjoin/engine/join.hpp"
#include "graphjoin/equivalence.hpp"

namespace graphjoin::verify {
namespace {

const std::vector<std::pair<std::string, std::string>> kOn{{"k", "k"}};

relational::ThetaPredicate key_theta() { return relational::ThetaPredicate::equalities(kOn); }

engine::EngineOptions engine_options(const Options& options) {
  engine::EngineOptions out;
  out.threads = options.threads;
  out.skip_theta_recheck = options.skip_theta_recheck;
  return out;
}

std::string operands(const std::vector<GraphSpec>& graphs) {
  std::string out;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    out += fmt::format("operand {}:\n{}", static_cast<char>('A' + i), describe(graphs[i]));
  }
  return out;
}

std::optional<std::string> compare(const GraphDatabase& db, ComponentId x, ComponentId y) {
  return first_difference(db, signature(db, x), signature(db, y));
}

std::string label(EdgeSemantics semantics) { return to_string(semantics); }

using Sig = std::pair<std::vector<ElementId>, std::uint64_t>;

std::vector<Sig> replica_signature(const GraphDatabase& db, ComponentId c) {
  const GraphView g = db.get_graph(c);
  std::vector<Sig> out;
  for (ElementId v : g.vertices()) out.emplace_back(decomposition(db, v), db.replica(v));
  for (ElementId e : g.edges()) out.emplace_back(decomposition(db, e), db.replica(e));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t run_seed, std::size_t trial) {
  // splitmix64 finalizer over the run seed and trial number.
  std::uint64_t z = run_seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<GraphSpec> trial_graphs(std::uint64_t seed, std::size_t count,
                                    std::size_t max_vertices, std::size_t max_edges) {
  std::mt19937_64 rng(seed);
  RandomGraphParams params;
  params.max_vertices = max_vertices;
  params.max_edges = max_edges;
  params.key_domain = 2 + uniform_below(rng, 3);
  std::vector<GraphSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    params.side_attribute = std::string(1, static_cast<char>('a' + i));
    out.push_back(random_graph(rng, params));
  }
  return out;
}

std::string describe(const GraphSpec& graph) {
  std::ostringstream out;
  auto tuple = [](const Tuple& t) {
    std::string s = "{";
    for (const auto& [k, v] : t.bindings()) {
      if (s.size() > 1) s += ", ";
      s += k + "=" + v.text();
    }
    return s + "}";
  };
  auto labels = [](const LabelSet& l) {
    std::string s = "[";
    for (const auto& x : l) s += (s.size() > 1 ? "," : "") + x;
    return s + "]";
  };
  for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
    out << "  v" << i << ' ' << tuple(graph.vertices[i]) << ' '
        << labels(i < graph.vertex_labels.size() ? graph.vertex_labels[i] : LabelSet{}) << '\n';
  }
  for (std::size_t i = 0; i < graph.edges.size(); ++i) {
    const EdgeSpec& e = graph.edges[i];
    out << "  e" << i << " v" << e.source << "->v" << e.target << ' ' << tuple(e.payload) << ' '
        << labels(e.labels) << '\n';
  }
  return out.str();
}

std::optional<std::string> engine_matches_oracle(std::uint64_t seed, const Options& options,
                                                 EdgeSemantics semantics, engine::HashMode mode) {
  const auto graphs = trial_graphs(seed, 2, options.max_vertices, options.max_edges);
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, graphs[0], "A.");
  const LoadedSpec b = add_graph(db, graphs[1], "B.");
  const JoinResult oracle =
      logical::graph_join(db, a.component, b.component, {key_theta(), semantics});
  const auto fast = engine::equi_join(db, a.component, b.component, kOn, semantics,
                                      engine_options(options), mode);
  db.validate_component(fast.result.component);
  if (auto d = compare(db, oracle.component, fast.result.component)) {
    return fmt::format("engine differs from the reference join ({}, {} hash): {}\n{}",
                       label(semantics), mode == engine::HashMode::kStable ? "stable" : "constant",
                       *d, operands(graphs));
  }
  return std::nullopt;
}

std::optional<std::string> commutes(std::uint64_t seed, const Options& options,
                                    EdgeSemantics semantics) {
  const auto graphs = trial_graphs(seed, 2, options.max_vertices, options.max_edges);
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, graphs[0], "A.");
  const LoadedSpec b = add_graph(db, graphs[1], "B.");
  const auto theta = key_theta();
  const JoinResult ab = logical::graph_join(db, a.component, b.component, {theta, semantics});
  const JoinResult ba = logical::graph_join(
      db, b.component, a.component, {relational::invert_predicate(theta), semantics});
  if (auto d = compare(db, ab.component, ba.component)) {
    return fmt::format("A join B differs from B join A ({}): {}\n{}", label(semantics), *d,
                       operands(graphs));
  }
  const auto eab = engine::equi_join(db, a.component, b.component, kOn, semantics,
                                     engine_options(options));
  const auto eba = engine::equi_join(db, b.component, a.component, kOn, semantics,
                                     engine_options(options));
  if (auto d = compare(db, eab.result.component, eba.result.component)) {
    return fmt::format("engine: A join B differs from B join A ({}): {}\n{}", label(semantics), *d,
                       operands(graphs));
  }
  return std::nullopt;
}

std::optional<std::string> associates(std::uint64_t seed, const Options& options,
                                      EdgeSemantics semantics, bool* indices_agree) {
  const auto graphs = trial_graphs(seed, 3, std::min<std::size_t>(options.max_vertices, 4),
                                   std::min<std::size_t>(options.max_edges, 8));
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, graphs[0], "A.");
  const LoadedSpec b = add_graph(db, graphs[1], "B.");
  const LoadedSpec c = add_graph(db, graphs[2], "C.");
  const JoinSpec spec{key_theta(), semantics};
  const JoinResult ab = logical::graph_join(db, a.component, b.component, spec);
  const JoinResult left = logical::graph_join(db, ab.component, c.component, spec);
  const JoinResult bc = logical::graph_join(db, b.component, c.component, spec);
  const JoinResult right = logical::graph_join(db, a.component, bc.component, spec);
  if (indices_agree != nullptr) {
    *indices_agree = replica_signature(db, left.component) == replica_signature(db, right.component);
  }
  if (auto d = compare(db, left.component, right.component)) {
    return fmt::format("(A join B) join C differs from A join (B join C) ({}): {}\n{}",
                       label(semantics), *d, operands(graphs));
  }
  const auto eab = engine::equi_join(db, a.component, b.component, kOn, semantics,
                                     engine_options(options));
  const auto eleft = engine::equi_join(db, eab.result.component, c.component, kOn, semantics,
                                       engine_options(options));
  if (auto d = compare(db, left.component, eleft.result.component)) {
    return fmt::format("engine differs on (A join B) join C ({}): {}\n{}", label(semantics), *d,
                       operands(graphs));
  }
  return std::nullopt;
}

std::optional<std::string> contained(std::uint64_t seed, const Options& options) {
  const auto graphs = trial_graphs(seed, 2, options.max_vertices, options.max_edges);
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, graphs[0], "A.");
  const LoadedSpec b = add_graph(db, graphs[1], "B.");
  const auto conj = engine::equi_join(db, a.component, b.component, kOn,
                                      EdgeSemantics::kConjunctive, engine_options(options));
  const auto disj = engine::equi_join(db, a.component, b.component, kOn,
                                      EdgeSemantics::kDisjunctive, engine_options(options));
  const GraphSignature sc = signature(db, conj.result.component);
  const GraphSignature sd = signature(db, disj.result.component);
  if (sc.vertices != sd.vertices) {
    return fmt::format("conjunctive and disjunctive vertex sets differ\n{}", operands(graphs));
  }
  if (!std::includes(sd.edges.begin(), sd.edges.end(), sc.edges.begin(), sc.edges.end())) {
    return fmt::format("a conjunctive edge is missing from the disjunctive result\n{}",
                       operands(graphs));
  }
  return std::nullopt;
}

bool Report::passed() const {
  return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return !l.gating || l.failures == 0; });
}

Report run(const Options& options) {
  Report report;
  auto law = [&](std::string name, std::uint64_t salt, auto check, bool gating = true) {
    LawResult result;
    result.law = std::move(name);
    result.gating = gating;
    for (std::size_t t = 0; t < options.trials; ++t) {
      const std::uint64_t seed = trial_seed(options.seed ^ salt, t);
      ++result.trials;
      std::optional<std::string> failure;
      try {
        failure = check(seed);
      } catch (const Error& e) {
        failure = fmt::format("error: {}", e.what());
      }
      if (failure) {
        ++result.failures;
        if (!result.counterexample) {
          result.counterexample = std::move(failure);
          result.failing_seed = seed;
        }
      }
    }
    report.laws.push_back(std::move(result));
  };
  for (EdgeSemantics s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
    const std::uint64_t salt = s == EdgeSemantics::kConjunctive ? 0 : 0x5bd1e995;
    law(fmt::format("engine = reference join, {}", label(s)), salt + 1, [&](std::uint64_t seed) {
      auto d = engine_matches_oracle(seed, options, s, engine::HashMode::kStable);
      return d ? d : engine_matches_oracle(seed, options, s, engine::HashMode::kConstant);
    });
    law(fmt::format("commutativity, {}", label(s)), salt + 2,
        [&](std::uint64_t seed) { return commutes(seed, options, s); });
    law(fmt::format("associativity, {}", label(s)), salt + 3,
        [&](std::uint64_t seed) { return associates(seed, options, s); },
        s == EdgeSemantics::kConjunctive);
  }
  law("containment", 4, [&](std::uint64_t seed) { return contained(seed, options); });
  return report;
}

}  // namespace graphjoin::verify
