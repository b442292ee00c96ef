#include <gtest/gtest.h>

#include <limits>

#include "graphjoin/combine.hpp"

namespace graphjoin {
namespace {

// Direct evaluation of (max{maxM, maxN} + 1) + sum_{k=0}^{i+j} k + min{i, j}.
std::uint64_t dovetail_by_loop(std::uint64_t i, std::uint64_t j, std::uint64_t bound) {
  std::uint64_t sum = 0;
  for (std::uint64_t k = 0; k <= i + j; ++k) sum += k;
  return bound + 1 + sum + std::min(i, j);
}

TEST(CombineSets, IsUnion) {
  EXPECT_EQ(combine_sets({"Follows"}, {"Cites"}), (LabelSet{"Follows", "Cites"}));
  EXPECT_EQ(combine_sets({}, {}), LabelSet{});
  EXPECT_EQ(combine_sets({"A", "B"}, {"B", "C"}), (LabelSet{"A", "B", "C"}));
}

TEST(CombineIndices, HandEvaluatedValues) {
  EXPECT_EQ(combine_indices(0, {0}, 0, {0}), 1u);
  EXPECT_EQ(combine_indices(1, {0, 1}, 2, {0, 1, 2}), 10u);
  // s_1 ⊕ t_1 over {1}, {1}: 2 + (0 + 1 + 2) + 1.
  EXPECT_EQ(combine_indices(1, {1}, 1, {1}), 6u);
}

TEST(CombineIndices, MatchesLoopEvaluation) {
  for (std::uint64_t i = 0; i < 20; ++i) {
    for (std::uint64_t j = 0; j < 20; ++j) {
      EXPECT_EQ(dovetail(i, j, 25), dovetail_by_loop(i, j, 25)) << i << "," << j;
    }
  }
}

TEST(CombineIndices, IsSymmetric) {
  EXPECT_EQ(combine_indices(1, {0, 1}, 0, {0, 1}), combine_indices(0, {0, 1}, 1, {0, 1}));
}

TEST(CombineIndices, RejectsEmptyUniverse) {
  try {
    combine_indices(0, {}, 0, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedIndexUniverse);
  }
}

TEST(CombineIndices, RejectsIndexOutsideUniverse) {
  try {
    combine_indices(5, {0, 1}, 0, {0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(CombineIndices, DetectsOverflow) {
  const auto big = std::numeric_limits<std::uint64_t>::max() / 2;
  try {
    dovetail(big, big, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIndexOverflow);
  }
  EXPECT_THROW(dovetail(0, 0, std::numeric_limits<std::uint64_t>::max()), Error);
}

TEST(CombineFunctions, RightOperandOverrides) {
  const Tuple f{{"Name", "Alice"}};
  const Tuple g{{"1Author", "Alice"}, {"Title", "Graphs"}};
  EXPECT_EQ(combine_functions(f, g),
            (Tuple{{"Name", "Alice"}, {"1Author", "Alice"}, {"Title", "Graphs"}}));
  EXPECT_EQ(combine_functions({}, {}), Tuple{});
  EXPECT_EQ(combine_functions({{"A", "1"}}, {{"A", "2"}}), (Tuple{{"A", "2"}}));
}

TEST(CombinePairs, IsComponentwise) {
  const std::pair<LabelSet, LabelSet> p{{"a"}, {"b"}}, q{{"c"}, {"d"}};
  const auto r = combine_pairs(p, q, combine_sets, combine_sets);
  EXPECT_EQ(r.first, (LabelSet{"a", "c"}));
  EXPECT_EQ(r.second, (LabelSet{"b", "d"}));
}

TEST(CombineElements, CombinesPayloadAndIndex) {
  const IndexedElement s{{{"A", "1"}}, 1}, t{{{"B", "2"}}, 1};
  const IndexedElement r = combine_elements(s, {1}, t, {1});
  EXPECT_EQ(r.payload, (Tuple{{"A", "1"}, {"B", "2"}}));
  EXPECT_EQ(r.replica, 6u);
}

TEST(CombinedValue, DecomposesIntoOperands) {
  using V = CombinedValue<int>;
  const V z = V::combine(CombineKind::kSet, V::leaf(1),
                         V::combine(CombineKind::kSet, V::leaf(2), V::leaf(3)));
  ASSERT_FALSE(z.is_leaf());
  auto [x, y] = z.decompose();
  EXPECT_TRUE(x.is_leaf());
  EXPECT_EQ(x.leaf_value(), 1);
  std::vector<int> leaves;
  z.collect_leaves(leaves);
  EXPECT_EQ(leaves, (std::vector<int>{1, 2, 3}));
}

TEST(RuntimeExtension, UnfoldsToUnionOfLeafLabels) {
  using V = CombinedValue<int>;
  const std::vector<LabelSet> ell{{"a"}, {"b"}, {"c"}};
  auto base = [&](int x) -> std::optional<LabelSet> { return ell[x]; };
  const V z = V::combine(CombineKind::kSet, V::leaf(0),
                         V::combine(CombineKind::kSet, V::leaf(1), V::leaf(2)));
  EXPECT_EQ(runtime_extend(z, base, combine_sets), (LabelSet{"a", "b", "c"}));
  EXPECT_EQ(runtime_extend(V::leaf(1), base, combine_sets), LabelSet{"b"});
}

TEST(RuntimeExtension, UndefinedLeafThrows) {
  using V = CombinedValue<int>;
  auto base = [](int x) -> std::optional<LabelSet> {
    if (x == 0) return LabelSet{"a"};
    return std::nullopt;
  };
  const V z = V::combine(CombineKind::kSet, V::leaf(0), V::leaf(1));
  try {
    runtime_extend(z, base, combine_sets);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUndefinedExtension);
  }
}

}  // namespace
}  // namespace graphjoin
