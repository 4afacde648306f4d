#include "utk/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace utk::kernels {

namespace {

struct Selected {
    EvalFn fn;
    const char* name;
};

Selected pick() {
    const char* want = std::getenv("UTK_KERNEL");
#if defined(UTK_BUILD_AVX2)
    const bool have_avx2 = __builtin_cpu_supports("avx2");
#endif
    if (want != nullptr) {
        if (std::strcmp(want, "scalar") == 0)
            return {eval_scalar, "scalar"};
#if defined(UTK_BUILD_AVX2)
        if (std::strcmp(want, "avx2") == 0 && have_avx2)
            return {eval_avx2, "avx2"};
#endif
#if defined(UTK_BUILD_NEON)
        if (std::strcmp(want, "neon") == 0)
            return {eval_neon, "neon"};
#endif
        // Unknown or unavailable request: fall through to autodetect.
    }
#if defined(UTK_BUILD_AVX2)
    if (have_avx2)
        return {eval_avx2, "avx2"};
#endif
#if defined(UTK_BUILD_NEON)
    return {eval_neon, "neon"};
#else
    return {eval_scalar, "scalar"};
#endif
}

const Selected& selected() {
    static const Selected s = pick();
    return s;
}

} // namespace

EvalFn active() { return selected().fn; }

const char* active_name() { return selected().name; }

} // namespace utk::kernels
