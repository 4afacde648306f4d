#include "utk/kernels.hpp"

namespace utk::kernels {

void eval_scalar(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words) {
    for (size_t u = 0; u < n_units; ++u) {
        uint64_t* a = slices + static_cast<size_t>(units[u].i) * words;
        uint64_t* b = slices + static_cast<size_t>(units[u].j) * words;
        for (size_t q = 0; q < words; ++q) {
            const uint64_t x = a[q];
            const uint64_t y = b[q];
            a[q] = x & y;
            b[q] = x | y;
        }
    }
}

} // namespace utk::kernels
