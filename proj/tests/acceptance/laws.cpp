#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>

#include <fmt/format.h>

#include "brute_join.hpp"
#include "criteria.hpp"
#include "graphjoin/combine.hpp"
#include "graphjoin/equivalence.hpp"
#include "graphjoin/logical_join.hpp"
#include "graphjoin/relational.hpp"
#include "graphjoin/verify.hpp"

namespace graphjoin::acceptance {
namespace {

constexpr std::uint64_t kRunSeed = 20240607;

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

// Reference join against a join computed straight from the definitions.
std::optional<std::string> reference_matches_brute(std::uint64_t seed, EdgeSemantics semantics) {
  const auto graphs = verify::trial_graphs(seed, 2, 12, 20);
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, graphs[0], "A.");
  const LoadedSpec b = add_graph(db, graphs[1], "B.");
  const JoinResult r = logical::graph_join(
      db, a.component, b.component,
      {relational::ThetaPredicate::equalities({{"k", "k"}}), semantics});
  const GraphSignature got = signature(db, r.component);
  const GraphSignature want =
      testing::brute_join(graphs[0], a, graphs[1], b, {{"k", "k"}}, semantics);
  if (got == want) return std::nullopt;
  return first_difference(db, got, want).value_or("signatures differ");
}

}  // namespace

Outcome oracle_equivalence() {
  constexpr std::size_t kTrials = 1000;
  constexpr double kBudgetS = 30;
  const auto start = std::chrono::steady_clock::now();
  verify::Options options;
  std::size_t mismatches = 0, checks = 0;
  std::string first;
  for (std::size_t t = 0; t < kTrials; ++t) {
    const std::uint64_t seed = verify::trial_seed(kRunSeed, t);
    for (auto s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
      for (auto mode : {engine::HashMode::kStable, engine::HashMode::kConstant}) {
        ++checks;
        if (auto d = verify::engine_matches_oracle(seed, options, s, mode)) {
          if (mismatches++ == 0) first = fmt::format("seed {}: {}", seed, first_line(*d));
        }
      }
      ++checks;
      if (auto d = reference_matches_brute(seed, s)) {
        if (mismatches++ == 0) first = fmt::format("seed {} brute: {}", seed, first_line(*d));
      }
    }
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = mismatches == 0 && elapsed < kBudgetS;
  o.detail = fmt::format("{} trials, {} checks, {} mismatches, {:.1f} s (budget {} s)", kTrials,
                         checks, mismatches, elapsed, kBudgetS);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

Outcome commutativity() {
  constexpr std::size_t kTrials = 500;
  verify::Options options;
  std::size_t violations = 0;
  std::string first;
  for (auto s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
    for (std::size_t t = 0; t < kTrials; ++t) {
      const std::uint64_t seed = verify::trial_seed(kRunSeed + 1, t);
      if (auto d = verify::commutes(seed, options, s)) {
        if (violations++ == 0) first = fmt::format("seed {}: {}", seed, first_line(*d));
      }
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt::format("{} trials per semantics, {} violations", kTrials, violations);
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

namespace {

// Association check on operands whose vertex matching is transitive (no
// shared attribute besides the key) and whose edges carry no payload.
bool restricted_associates(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomGraphParams p;
  p.max_vertices = 4;
  p.max_edges = 8;
  p.key_domain = 2 + uniform_below(rng, 3);
  p.shared_attribute = false;
  p.edge_payloads = false;
  GraphDatabase db;
  std::vector<LoadedSpec> g;
  for (const char* side : {"a", "b", "c"}) {
    p.side_attribute = side;
    g.push_back(add_graph(db, random_graph(rng, p), std::string(side) + "."));
  }
  const JoinSpec spec{relational::ThetaPredicate::equalities({{"k", "k"}}),
                      EdgeSemantics::kDisjunctive};
  const auto ab = logical::graph_join(db, g[0].component, g[1].component, spec);
  const auto left = logical::graph_join(db, ab.component, g[2].component, spec);
  const auto bc = logical::graph_join(db, g[1].component, g[2].component, spec);
  const auto right = logical::graph_join(db, g[0].component, bc.component, spec);
  return signature(db, left.component) == signature(db, right.component);
}

}  // namespace

Outcome associativity() {
  constexpr std::size_t kTrials = 200;
  verify::Options options;
  Outcome o;
  std::string detail, note;
  bool pass = true;
  for (auto s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
    std::size_t violations = 0, indices_agree = 0;
    std::string first;
    for (std::size_t t = 0; t < kTrials; ++t) {
      const std::uint64_t seed = verify::trial_seed(kRunSeed + 2, t);
      bool agree = false;
      if (auto d = verify::associates(seed, options, s, &agree)) {
        if (violations++ == 0) first = fmt::format(" (first: seed {}: {})", seed, first_line(*d));
      }
      indices_agree += agree;
    }
    pass = pass && violations == 0;
    detail += fmt::format("{}{}: {}/{} violations{}", detail.empty() ? "" : "; ", to_string(s),
                          violations, kTrials, first);
    note += fmt::format("{}{} raw dovetail indices agree in {}/{}", note.empty() ? "" : "; ",
                        to_string(s), indices_agree, kTrials);
  }
  std::size_t restricted = 0;
  for (std::size_t t = 0; t < kTrials; ++t) {
    restricted += !restricted_associates(verify::trial_seed(kRunSeed + 3, t));
  }
  note += fmt::format(
      "; disjunctive on operands with transitive matching and no edge payloads: {}/{} violations",
      restricted, kTrials);
  o.pass = pass;
  o.detail = detail;
  o.note = note;
  return o;
}

namespace {

Tuple random_tuple(std::mt19937_64& rng, const char* side) {
  Tuple t;
  if (uniform_below(rng, 10) != 0) t.set("k", AttributeValue(std::to_string(uniform_below(rng, 3))));
  if (uniform_below(rng, 3) == 0) t.set("s", AttributeValue(std::to_string(uniform_below(rng, 2))));
  if (uniform_below(rng, 2) == 0) t.set(side, AttributeValue(std::to_string(uniform_below(rng, 2))));
  return t;
}

std::vector<IndexedElement> sorted_elements(const relational::IndexedSet& s) {
  auto out = s.elements;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Outcome index_symmetry() {
  constexpr std::size_t kTrials = 500;
  std::mt19937_64 rng(kRunSeed + 4);
  std::size_t violations = 0, elements = 0;
  std::string first;
  for (std::size_t t = 0; t < kTrials; ++t) {
    std::vector<Tuple> rt, st;
    for (auto n = 1 + uniform_below(rng, 8); n > 0; --n) rt.push_back(random_tuple(rng, "a"));
    for (auto n = 1 + uniform_below(rng, 8); n > 0; --n) st.push_back(random_tuple(rng, "b"));
    const auto r = relational::IndexedSet::from_multiset(rt);
    const auto s = relational::IndexedSet::from_multiset(st);
    const auto theta = t % 2 == 0 ? relational::ThetaPredicate::equalities({{"k", "k"}})
                                  : relational::ThetaPredicate::equalities({{"a", "b"}});
    const auto rs = relational::theta_join(r, s, theta);
    const auto sr = relational::theta_join(s, r, relational::invert_predicate(theta));
    elements += rs.elements.size();
    if (sorted_elements(rs) != sorted_elements(sr) || rs.universe != sr.universe) {
      if (violations++ == 0) first = fmt::format("trial {}", t);
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = fmt::format("{} indexed-set pairs, {} joined elements compared with replica indices, "
                         "{} violations{}",
                         kTrials, elements, violations, first.empty() ? "" : "; first: " + first);
  return o;
}

Outcome dovetail_injectivity() {
  // The index of a combined element depends on M and N only through
  // max(M ∪ N) = B, so every M × N with that maximum is a subset of the
  // grid {0..B}²: a collision inside M × N is a collision on that grid whose
  // four coordinates lie in M and N respectively.
  constexpr std::uint64_t kTop = 15;
  std::size_t collisions = 0, below_max = 0, unordered_collisions = 0;
  std::string first;
  for (std::uint64_t b = 0; b <= kTop; ++b) {
    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, std::uint64_t>>> by_value;
    for (std::uint64_t i = 0; i <= b; ++i) {
      for (std::uint64_t j = 0; j <= b; ++j) {
        const IndexUniverse m{i, b}, n{j};
        const std::uint64_t v = combine_indices(i, m, j, n);
        below_max += v <= b;
        by_value[v].emplace_back(i, j);
      }
    }
    for (const auto& [v, pairs] : by_value) {
      if (pairs.size() < 2) continue;
      collisions += pairs.size() - 1;
      std::set<std::pair<std::uint64_t, std::uint64_t>> unordered;
      for (auto [i, j] : pairs) unordered.emplace(std::min(i, j), std::max(i, j));
      unordered_collisions += unordered.size() - 1;
      if (first.empty()) {
        const auto [i, j] = pairs[0];
        const auto [k, l] = pairs[1];
        first = fmt::format("M = N = {{{}, {}}}: ({}, {}) and ({}, {}) both map to {}",
                            std::min(i, k), std::max(i, k), i, j, k, l, v);
      }
    }
  }
  Outcome o;
  o.pass = collisions == 0 && below_max == 0;
  o.detail = fmt::format("over all maxima 0..{}: {} colliding grid points, {} outputs not above "
                         "both maxima{}",
                         kTop, collisions, below_max, first.empty() ? "" : "; first: " + first);
  o.note = fmt::format("injective on unordered pairs: {} ({} collisions); the index is symmetric "
                       "in (i, j), which index symmetry requires",
                       unordered_collisions == 0 ? "yes" : "no", unordered_collisions);
  return o;
}

}  // namespace graphjoin::acceptance
