#include "utk/kernels.hpp"

#include <immintrin.h>

namespace utk::kernels {

void eval_avx2(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words) {
    for (size_t u = 0; u < n_units; ++u) {
        uint64_t* a = slices + static_cast<size_t>(units[u].i) * words;
        uint64_t* b = slices + static_cast<size_t>(units[u].j) * words;
        size_t q = 0;
        for (; q + 4 <= words; q += 4) {
            const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + q));
            const __m256i y = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + q));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(a + q), _mm256_and_si256(x, y));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(b + q), _mm256_or_si256(x, y));
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
