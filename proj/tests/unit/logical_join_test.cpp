#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "graphjoin/equivalence.hpp"
#include "graphjoin/logical_join.hpp"
#include "brute_join.hpp"
#include "researcher_citation.hpp"

namespace graphjoin {
namespace {

using testing::brute_join;

JoinSpec on(std::vector<relational::ThetaPredicate::Equality> pairs, EdgeSemantics semantics) {
  return {relational::ThetaPredicate::equalities(std::move(pairs)), semantics};
}

class ResearcherCitation : public ::testing::TestWithParam<EdgeSemantics> {};

TEST_P(ResearcherCitation, ResearchersJoinCitations) {
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, testing::researcher_graph(), "R:");
  const LoadedSpec b = add_graph(db, testing::citation_graph(), "C:");
  const JoinResult r = logical::graph_join(db, a.component, b.component,
                                           on({{"Name", "1Author"}}, GetParam()));
  db.validate();
  const GraphView g = db.get_graph(r.component);
  ASSERT_EQ(g.vertices().size(), 2u);
  ASSERT_EQ(g.edges().size(), 1u);

  std::vector<Tuple> payloads;
  for (ElementId v : g.vertices()) {
    payloads.push_back(db.payload(v));
    EXPECT_EQ(db.labels(v), (LabelSet{"User", "Paper"}));
  }
  std::sort(payloads.begin(), payloads.end());
  EXPECT_EQ(payloads, (std::vector<Tuple>{
                          {{"Name", "Alice"}, {"1Author", "Alice"}, {"Title", "Graphs"}},
                          {{"Name", "Bob"}, {"1Author", "Bob"}, {"Title", "Joins"}}}));

  const ElementId e = g.edges()[0];
  EXPECT_EQ(db.labels(e), (LabelSet{"Follows", "Cites"}));
  EXPECT_EQ(db.payload(db.endpoints(e).source).find("Name")->text(), "Alice");
  EXPECT_EQ(db.payload(db.endpoints(e).target).find("Name")->text(), "Bob");
}

INSTANTIATE_TEST_SUITE_P(BothSemantics, ResearcherCitation,
                         ::testing::Values(EdgeSemantics::kConjunctive,
                                           EdgeSemantics::kDisjunctive));

TEST(LogicalJoin, EmptyOperands) {
  GraphDatabase db;
  const LoadedSpec a = add_graph(db, {}, "A:");
  const LoadedSpec b = add_graph(db, {}, "B:");
  for (auto s : {EdgeSemantics::kConjunctive, EdgeSemantics::kDisjunctive}) {
    const JoinResult r = logical::graph_join(db, a.component, b.component, on({{"k", "k"}}, s));
    EXPECT_TRUE(db.get_graph(r.component).vertices().empty());
    EXPECT_TRUE(db.get_graph(r.component).edges().empty());
  }
}

TEST(LogicalJoin, UnconstrainedConjunctiveJoinIsTensorProduct) {
  GraphDatabase db2;
  GraphSpec left = complete_graph(3, "a");
  GraphSpec right = sparse_distinct_graph(4, "b");
  for (auto& t : right.vertices) t = Tuple{{"b", t.find("b")->text()}};
  const LoadedSpec a2 = add_graph(db2, left, "A:");
  const LoadedSpec b2 = add_graph(db2, right, "B:");
  const JoinResult r2 = logical::graph_join(db2, a2.component, b2.component, {});
  const GraphView g2 = db2.get_graph(r2.component);
  EXPECT_EQ(g2.vertices().size(), left.vertices.size() * right.vertices.size());
  EXPECT_EQ(g2.edges().size(), left.edges.size() * right.edges.size());
  db2.validate();
}

TEST(LogicalJoin, DisjunctiveFillsEdgesWithoutPartners) {
  GraphSpec left;
  left.vertices = {Tuple{{"k", "1"}, {"a", "0"}}, Tuple{{"k", "1"}, {"a", "1"}}};
  left.vertex_labels = {{}, {}};
  left.edges = {{0, 1, {}, {"E"}}};
  GraphSpec right;
  right.vertices = {Tuple{{"k", "1"}, {"b", "0"}}, Tuple{{"k", "1"}, {"b", "1"}}};
  right.vertex_labels = {{}, {}};

  GraphDatabase db;
  const LoadedSpec a = add_graph(db, left, "A:");
  const LoadedSpec b = add_graph(db, right, "B:");
  const JoinResult conj = logical::graph_join(db, a.component, b.component,
                                              on({{"k", "k"}}, EdgeSemantics::kConjunctive));
  const JoinResult disj = logical::graph_join(db, a.component, b.component,
                                              on({{"k", "k"}}, EdgeSemantics::kDisjunctive));
  EXPECT_EQ(db.get_graph(conj.component).vertices().size(), 4u);
  EXPECT_TRUE(db.get_graph(conj.component).edges().empty());
  const GraphView g = db.get_graph(disj.component);
  ASSERT_EQ(g.edges().size(), 4u);
  for (ElementId e : g.edges()) {
    EXPECT_EQ(db.labels(e), LabelSet{"E"});
    const auto leaves = db.leaves(e);
    ASSERT_EQ(leaves.size(), 2u);
    EXPECT_EQ(leaves[0], a.edges[0]);
    EXPECT_TRUE(db.is_fill(leaves[1]));
  }
  db.validate();
}

class AgainstBruteForce : public ::testing::TestWithParam<EdgeSemantics> {};

TEST_P(AgainstBruteForce, SmallRandomGraphs) {
  std::mt19937_64 rng(2024);
  RandomGraphParams pa{.max_vertices = 5, .max_edges = 8, .side_attribute = "a"};
  RandomGraphParams pb{.max_vertices = 5, .max_edges = 8, .side_attribute = "b"};
  for (int trial = 0; trial < 300; ++trial) {
    const GraphSpec sa = random_graph(rng, pa);
    const GraphSpec sb = random_graph(rng, pb);
    GraphDatabase db;
    const LoadedSpec la = add_graph(db, sa, "A:");
    const LoadedSpec lb = add_graph(db, sb, "B:");
    const JoinResult r =
        logical::graph_join(db, la.component, lb.component, on({{"k", "k"}}, GetParam()));
    db.validate();
    const GraphSignature got = signature(db, r.component);
    const GraphSignature want = brute_join(sa, la, sb, lb, {{"k", "k"}}, GetParam());
    ASSERT_EQ(got, want) << "trial " << trial << ": "
                         << first_difference(db, got, want).value_or("");
  }
}

INSTANTIATE_TEST_SUITE_P(BothSemantics, AgainstBruteForce,
                         ::testing::Values(EdgeSemantics::kConjunctive,
                                           EdgeSemantics::kDisjunctive));

TEST(LogicalJoin, ConjunctiveEdgesAreContainedInDisjunctive) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    GraphDatabase db;
    const LoadedSpec la = add_graph(db, random_graph(rng, {.side_attribute = "a"}), "A:");
    const LoadedSpec lb = add_graph(db, random_graph(rng, {.side_attribute = "b"}), "B:");
    const GraphSignature c = signature(
        db, logical::graph_join(db, la.component, lb.component,
                                on({{"k", "k"}}, EdgeSemantics::kConjunctive))
                .component);
    const GraphSignature d = signature(
        db, logical::graph_join(db, la.component, lb.component,
                                on({{"k", "k"}}, EdgeSemantics::kDisjunctive))
                .component);
    EXPECT_EQ(c.vertices, d.vertices);
    EXPECT_TRUE(std::includes(d.edges.begin(), d.edges.end(), c.edges.begin(), c.edges.end()))
        << "trial " << trial;
  }
}

}  // namespace
}  // namespace graphjoin
