#include "utk/kernels.hpp"

#include <arm_neon.h>

namespace utk::kernels {

void eval_neon(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words) {
    for (size_t u = 0; u < n_units; ++u) {
        uint64_t* a = slices + static_cast<size_t>(units[u].i) * words;
        uint64_t* b = slices + static_cast<size_t>(units[u].j) * words;
        size_t q = 0;
        for (; q + 2 <= words; q += 2) {
            const uint64x2_t x = vld1q_u64(a + q);
            const uint64x2_t y = vld1q_u64(b + q);
            vst1q_u64(a + q, vandq_u64(x, y));
            vst1q_u64(b + q, vorrq_u64(x, y));
        }
        for (; q < words; ++q) {
            const uint64_t x = a[q];
            const uint64_t y = b[q];
            a[q] = x & y;
            b[q] = x | y;
        }
    }
}

} // namespace utk::kernels
