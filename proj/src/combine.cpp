#include "graphjoin/combine.hpp"

#include <algorithm>
#include <string>

namespace graphjoin {
namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kIndexOverflow, "dovetail index exceeds 64 bits");
  }
  return out;
}

}  // namespace

LabelSet combine_sets(const LabelSet& a, const LabelSet& b) {
  LabelSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

std::uint64_t dovetail(std::uint64_t i, std::uint64_t j, std::uint64_t bound) {
  const std::uint64_t s = checked_add(i, j);
  // sum_{k=0}^{s} k = s(s+1)/2; divide the even factor first.
  std::uint64_t a = s, b = checked_add(s, 1);
  if (a % 2 == 0) a /= 2; else b /= 2;
  std::uint64_t triangle = 0;
  if (__builtin_mul_overflow(a, b, &triangle)) {
    throw Error(ErrorCode::kIndexOverflow, "dovetail index exceeds 64 bits");
  }
  return checked_add(checked_add(checked_add(bound, 1), triangle), std::min(i, j));
}

std::uint64_t combine_indices(std::uint64_t i, const IndexUniverse& m, std::uint64_t j,
                              const IndexUniverse& n) {
  if (m.empty() || n.empty()) {
    throw Error(ErrorCode::kUndefinedIndexUniverse, "dovetail over an empty index universe");
  }
  if (!m.contains(i) || !n.contains(j)) {
    throw Error(ErrorCode::kInvalidArgument,
                "replica index " + std::to_string(m.contains(i) ? j : i) +
                    " is outside its index universe");
  }
  return dovetail(i, j, std::max(*m.max(), *n.max()));
}

Tuple combine_functions(const Tuple& f, const Tuple& g) {
  Tuple out = f;
  for (const auto& [attribute, value] : g.bindings()) out.set(attribute, value);
  return out;
}

IndexedElement combine_elements(const IndexedElement& s, const IndexUniverse& m,
                                const IndexedElement& t, const IndexUniverse& n) {
  return {combine_functions(s.payload, t.payload), combine_indices(s.replica, m, t.replica, n)};
}

}  // namespace graphjoin
