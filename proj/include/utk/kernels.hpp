#pragma once

#include <cstddef>
#include <cstdint>

#include "utk/compare_swap.hpp"

namespace utk::kernels {

// Applies a unit list in order to a wire-major slice buffer: wire w owns the
// `words` 64-bit words starting at slices + w*words, bit b of a word column
// being one evaluation lane (a cycle, or one vector of a batch). Each unit
// (i, j) rewrites row i to AND and row j to OR across all lanes at once.
using EvalFn = void (*)(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words);

void eval_scalar(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words);

#if defined(UTK_BUILD_AVX2)
void eval_avx2(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words);
#endif
#if defined(UTK_BUILD_NEON)
void eval_neon(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words);
#endif

// Best variant for this machine; honors UTK_KERNEL=scalar|avx2|neon.
EvalFn active();
const char* active_name();

inline void eval(const CompareSwap* units, size_t n_units, uint64_t* slices, size_t words) {
    active()(units, n_units, slices, words);
}

} // namespace utk::kernels
