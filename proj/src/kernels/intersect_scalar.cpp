#include "graphjoin/kernels/intersect.hpp"

namespace graphjoin::kernels {

void intersect_sorted_scalar(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                             PositionPairs& out) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out.emplace_back(i, j);
      ++i;
      ++j;
    }
  }
}

}  // namespace graphjoin::kernels
