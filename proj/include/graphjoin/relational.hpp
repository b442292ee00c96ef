#pragma once

// Relational θ-join over indexed sets of tuples: a natural join (agreement on
// shared attributes) followed by selection under θ.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "graphjoin/model.hpp"

namespace graphjoin::relational {

/// An element handed to an opaque predicate together with its position in
/// its indexed set.
struct Operand {
  const IndexedElement& element;
  std::size_t position;
};

class ThetaPredicate {
 public:
  enum class Kind { kAlwaysTrue, kAttributeEqualities, kOpaque };
  /// (left attribute, right attribute).
  using Equality = std::pair<std::string, std::string>;
  using Opaque = std::function<bool(const Operand& left, const Operand& right)>;

  static ThetaPredicate always_true();
  static ThetaPredicate equalities(std::vector<Equality> pairs);
  static ThetaPredicate opaque(Opaque predicate);

  Kind kind() const noexcept { return kind_; }
  const std::vector<Equality>& equality_pairs() const noexcept { return pairs_; }

  /// An equality over an attribute missing on either side is false.
  bool operator()(const Operand& left, const Operand& right) const;
  bool operator()(const Tuple& left, const Tuple& right) const;

  /// θ ∧ other. Conjunctions of equalities stay equalities.
  ThetaPredicate conjoin(const ThetaPredicate& other) const;

  /// Structural equality; opaque predicates are never equal.
  friend bool operator==(const ThetaPredicate& a, const ThetaPredicate& b);

 private:
  Kind kind_ = Kind::kAlwaysTrue;
  std::vector<Equality> pairs_;
  Opaque opaque_;
};

/// θ⁻¹(a, b) ⇔ θ(b, a). An involution.
ThetaPredicate invert_predicate(const ThetaPredicate& theta);

/// ∀x ∈ dom(r) ∩ dom(s). r(x) = s(x); vacuously true on disjoint domains.
bool agrees_on_shared(const Tuple& r, const Tuple& s);

struct IndexedSet {
  std::vector<IndexedElement> elements;
  IndexUniverse universe;
  /// For join results: positions (in the left and right operands) each
  /// element was combined from. Empty for sets built from a multiset.
  std::vector<std::pair<std::size_t, std::size_t>> origins;

  /// s_i for 0 < i ≤ μ(s), in first-occurrence order.
  static IndexedSet from_multiset(const std::vector<Tuple>& tuples);
};

/// { r_i ⊕ s_j | θ(r_i, s_j), r and s agree on shared attributes }, ordered by
/// (left position, right position).
IndexedSet theta_join(const IndexedSet& r, const IndexedSet& s, const ThetaPredicate& theta);

}  // namespace graphjoin::relational
