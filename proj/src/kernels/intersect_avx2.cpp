#include "graphjoin/kernels/intersect.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define GRAPHJOIN_HAVE_X86 1
#endif

namespace graphjoin::kernels {

#if GRAPHJOIN_HAVE_X86

// Block-wise all-pairs compare of 4 lanes of `a` against 4 lanes of `b`
// (the original block plus its three lane rotations), then advance whichever
// block ends with the smaller value.
__attribute__((target("avx2"))) void intersect_sorted_avx2(std::span<const std::uint64_t> a,
                                                           std::span<const std::uint64_t> b,
                                                           PositionPairs& out) {
  std::size_t i = 0, j = 0;
  const std::size_t a_blocks = a.size() & ~std::size_t{3};
  const std::size_t b_blocks = b.size() & ~std::size_t{3};

  while (i < a_blocks && j < b_blocks) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a.data() + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b.data() + j));
    // rot_r[k] = b[j + (k + r) % 4]
    const __m256i rot1 = _mm256_permute4x64_epi64(vb, 0x39);
    const __m256i rot2 = _mm256_permute4x64_epi64(vb, 0x4E);
    const __m256i rot3 = _mm256_permute4x64_epi64(vb, 0x93);
    const int m0 = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(va, vb)));
    const int m1 = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(va, rot1)));
    const int m2 = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(va, rot2)));
    const int m3 = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpeq_epi64(va, rot3)));
    if ((m0 | m1 | m2 | m3) != 0) {
      for (int lane = 0; lane < 4; ++lane) {
        const int bit = 1 << lane;
        int r = -1;
        if (m0 & bit) r = 0;
        else if (m1 & bit) r = 1;
        else if (m2 & bit) r = 2;
        else if (m3 & bit) r = 3;
        if (r >= 0) out.emplace_back(i + lane, j + static_cast<std::size_t>((lane + r) & 3));
      }
    }
    const std::uint64_t a_last = a[i + 3];
    const std::uint64_t b_last = b[j + 3];
    if (a_last <= b_last) i += 4;
    if (b_last <= a_last) j += 4;
  }

  // Scalar tail. Matches of already-consumed blocks were reported above, and
  // strict monotonicity means a consumed element cannot match again.
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

bool avx2_supported() noexcept { return __builtin_cpu_supports("avx2"); }

#else

void intersect_sorted_avx2(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                           PositionPairs& out) {
  intersect_sorted_scalar(a, b, out);
}

bool avx2_supported() noexcept { return false; }

#endif

}  // namespace graphjoin::kernels
