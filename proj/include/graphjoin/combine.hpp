#pragma once

// The combination operator for each supported type class, plus the lazily
// decomposable value used by run-time extensions.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "graphjoin/error.hpp"
#include "graphjoin/model.hpp"

namespace graphjoin {

enum class CombineKind : std::uint8_t { kSet, kInteger, kFunction, kPair };

/// Set union.
LabelSet combine_sets(const LabelSet& a, const LabelSet& b);

/// Dovetail number of i in M and j in N:
///   (max{max M, max N} + 1) + sum_{k=0}^{i+j} k + min{i, j}.
/// Throws kUndefinedIndexUniverse when M or N is empty, kInvalidArgument when
/// i is not in M or j is not in N, and kIndexOverflow past 64 bits.
std::uint64_t combine_indices(std::uint64_t i, const IndexUniverse& m, std::uint64_t j,
                              const IndexUniverse& n);

/// Same formula with membership already established; `bound` is
/// max{max M, max N}.
std::uint64_t dovetail(std::uint64_t i, std::uint64_t j, std::uint64_t bound);

/// Overriding of f by g: g(x) where defined, otherwise f(x).
Tuple combine_functions(const Tuple& f, const Tuple& g);

/// (s ⊕ t)_{i ⊕ j}.
IndexedElement combine_elements(const IndexedElement& s, const IndexUniverse& m,
                                const IndexedElement& t, const IndexUniverse& n);

/// Componentwise combination of two pairs.
template <class X, class Y, class CombineX, class CombineY>
std::pair<X, Y> combine_pairs(const std::pair<X, Y>& p, const std::pair<X, Y>& q,
                              CombineX&& combine_x, CombineY&& combine_y) {
  return {combine_x(p.first, q.first), combine_y(p.second, q.second)};
}

/// An unevaluated x ⊕ y tree. Leaves hold base values; inner nodes remember
/// their operands so the combination can always be taken apart again.
template <class Leaf>
class CombinedValue {
 public:
  static CombinedValue leaf(Leaf value) {
    return CombinedValue(std::make_shared<const Node>(Node{std::move(value)}));
  }

  static CombinedValue combine(CombineKind kind, CombinedValue left, CombinedValue right) {
    return CombinedValue(std::make_shared<const Node>(
        Node{Branch{kind, std::move(left), std::move(right)}}));
  }

  bool is_leaf() const { return std::holds_alternative<Leaf>(node_->content); }
  const Leaf& leaf_value() const { return std::get<Leaf>(node_->content); }
  CombineKind kind() const { return std::get<Branch>(node_->content).kind; }

  /// The operands x and y of z = x ⊕ y.
  std::pair<const CombinedValue&, const CombinedValue&> decompose() const {
    const auto& branch = std::get<Branch>(node_->content);
    return {branch.left, branch.right};
  }

  /// Leaves in left-to-right order.
  void collect_leaves(std::vector<Leaf>& out) const {
    if (is_leaf()) {
      out.push_back(leaf_value());
      return;
    }
    auto [x, y] = decompose();
    x.collect_leaves(out);
    y.collect_leaves(out);
  }

 private:
  struct Branch {
    CombineKind kind;
    CombinedValue left;
    CombinedValue right;
  };
  struct Node {
    std::variant<Leaf, Branch> content;
  };

  explicit CombinedValue(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// F_f(z): f(z) for base values, F_f(x) ⊕ F_f(y) for z = x ⊕ y.
/// `base` returns std::nullopt outside dom(f); that leaf makes the whole
/// extension undefined (kUndefinedExtension).
template <class Leaf, class Base, class Combine>
auto runtime_extend(const CombinedValue<Leaf>& z, const Base& base, const Combine& combine)
    -> typename std::invoke_result_t<const Base&, const Leaf&>::value_type {
  if (z.is_leaf()) {
    auto value = base(z.leaf_value());
    if (!value) throw Error(ErrorCode::kUndefinedExtension, "run-time extension undefined on leaf");
    return *std::move(value);
  }
  auto [x, y] = z.decompose();
  return combine(runtime_extend(x, base, combine), runtime_extend(y, base, combine));
}

}  // namespace graphjoin
