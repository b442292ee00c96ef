#include <cstdlib>

#include "graphjoin/kernels/intersect.hpp"

namespace graphjoin::kernels {

Isa selected_isa() noexcept {
  static const Isa isa = [] {
    if (std::getenv("GRAPHJOIN_FORCE_SCALAR") != nullptr) return Isa::kScalar;
    return avx2_supported() ? Isa::kAvx2 : Isa::kScalar;
  }();
  return isa;
}

std::string_view to_string(Isa isa) noexcept {
  return isa == Isa::kAvx2 ? "avx2" : "scalar";
}

void intersect_sorted(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                      PositionPairs& out) {
  if (selected_isa() == Isa::kAvx2) {
    intersect_sorted_avx2(a, b, out);
  } else {
    intersect_sorted_scalar(a, b, out);
  }
}

}  // namespace graphjoin::kernels
