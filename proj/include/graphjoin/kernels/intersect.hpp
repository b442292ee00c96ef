#pragma once

// Intersection of two strictly increasing u64 sequences, reporting matching
// positions. Used to merge the bucket directories of two engine indexes.
// A portable scalar kernel and an AVX2 kernel produce identical output; the
// dispatcher picks AVX2 when the running CPU supports it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace graphjoin::kernels {

using PositionPairs = std::vector<std::pair<std::size_t, std::size_t>>;

enum class Isa { kScalar, kAvx2 };

void intersect_sorted_scalar(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                             PositionPairs& out);

/// Requires an AVX2-capable CPU; check avx2_supported() first.
void intersect_sorted_avx2(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           PositionPairs& out);

bool avx2_supported() noexcept;

/// Best kernel for this CPU, unless GRAPHJOIN_FORCE_SCALAR is set.
Isa selected_isa() noexcept;
std::string_view to_string(Isa isa) noexcept;

/// Appends (i, j) with a[i] == b[j] in increasing order of i.
void intersect_sorted(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                      PositionPairs& out);

}  // namespace graphjoin::kernels
