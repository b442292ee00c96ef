#include "graphjoin/relational.hpp"

#include <map>

#include "graphjoin/combine.hpp"

namespace graphjoin::relational {

ThetaPredicate ThetaPredicate::always_true() { return ThetaPredicate{}; }

ThetaPredicate ThetaPredicate::equalities(std::vector<Equality> pairs) {
  ThetaPredicate p;
  p.kind_ = Kind::kAttributeEqualities;
  p.pairs_ = std::move(pairs);
  return p;
}

ThetaPredicate ThetaPredicate::opaque(Opaque predicate) {
  ThetaPredicate p;
  p.kind_ = Kind::kOpaque;
  p.opaque_ = std::move(predicate);
  return p;
}

bool ThetaPredicate::operator()(const Tuple& left, const Tuple& right) const {
  switch (kind_) {
    case Kind::kAlwaysTrue:
      return true;
    case Kind::kAttributeEqualities:
      for (const auto& [l, r] : pairs_) {
        const AttributeValue* a = left.find(l);
        const AttributeValue* b = right.find(r);
        if (a == nullptr || b == nullptr || *a != *b) return false;
      }
      return true;
    case Kind::kOpaque: {
      const IndexedElement a{left, 0}, b{right, 0};
      return opaque_(Operand{a, 0}, Operand{b, 0});
    }
  }
  return false;
}

bool ThetaPredicate::operator()(const Operand& left, const Operand& right) const {
  if (kind_ == Kind::kOpaque) return opaque_(left, right);
  return (*this)(left.element.payload, right.element.payload);
}

ThetaPredicate ThetaPredicate::conjoin(const ThetaPredicate& other) const {
  if (kind_ == Kind::kAlwaysTrue) return other;
  if (other.kind_ == Kind::kAlwaysTrue) return *this;
  if (kind_ == Kind::kAttributeEqualities && other.kind_ == Kind::kAttributeEqualities) {
    auto pairs = pairs_;
    pairs.insert(pairs.end(), other.pairs_.begin(), other.pairs_.end());
    return equalities(std::move(pairs));
  }
  return opaque([a = *this, b = other](const Operand& l, const Operand& r) {
    return a(l, r) && b(l, r);
  });
}

bool operator==(const ThetaPredicate& a, const ThetaPredicate& b) {
  if (a.kind_ == ThetaPredicate::Kind::kOpaque || b.kind_ == ThetaPredicate::Kind::kOpaque) {
    return false;
  }
  return a.kind_ == b.kind_ && a.pairs_ == b.pairs_;
}

ThetaPredicate invert_predicate(const ThetaPredicate& theta) {
  switch (theta.kind()) {
    case ThetaPredicate::Kind::kAlwaysTrue:
      return theta;
    case ThetaPredicate::Kind::kAttributeEqualities: {
      std::vector<ThetaPredicate::Equality> swapped;
      swapped.reserve(theta.equality_pairs().size());
      for (const auto& [l, r] : theta.equality_pairs()) swapped.emplace_back(r, l);
      return ThetaPredicate::equalities(std::move(swapped));
    }
    case ThetaPredicate::Kind::kOpaque:
      break;
  }
  return ThetaPredicate::opaque(
      [theta](const Operand& l, const Operand& r) { return theta(r, l); });
}

bool agrees_on_shared(const Tuple& r, const Tuple& s) {
  const auto& a = r.bindings();
  const auto& b = s.bindings();
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      ++i;
    } else if (j->first < i->first) {
      ++j;
    } else {
      if (i->second != j->second) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

IndexedSet IndexedSet::from_multiset(const std::vector<Tuple>& tuples) {
  IndexedSet out;
  std::map<Tuple, std::uint64_t> seen;
  std::vector<std::uint64_t> indices;
  out.elements.reserve(tuples.size());
  for (const Tuple& t : tuples) {
    const std::uint64_t replica = ++seen[t];
    out.elements.push_back({t, replica});
    indices.push_back(replica);
  }
  out.universe = IndexUniverse(std::move(indices));
  return out;
}

IndexedSet theta_join(const IndexedSet& r, const IndexedSet& s, const ThetaPredicate& theta) {
  IndexedSet out;
  std::vector<std::uint64_t> indices;
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    const IndexedElement& ri = r.elements[i];
    for (std::size_t j = 0; j < s.elements.size(); ++j) {
      const IndexedElement& sj = s.elements[j];
      if (!agrees_on_shared(ri.payload, sj.payload)) continue;
      if (!theta(Operand{ri, i}, Operand{sj, j})) continue;
      out.elements.push_back(combine_elements(ri, r.universe, sj, s.universe));
      out.origins.emplace_back(i, j);
      indices.push_back(out.elements.back().replica);
    }
  }
  out.universe = IndexUniverse(std::move(indices));
  return out;
}

}  // namespace graphjoin::relational
