#include <doctest.h>

#include <random>
#include <vector>

#include "utk/kernels.hpp"
#include "utk/sortnet.hpp"

#include "oracles.hpp"

using namespace utk;

namespace {

std::vector<uint64_t> random_slices(std::mt19937_64& rng, uint32_t wires, size_t words) {
    std::vector<uint64_t> s(wires * words);
    for (auto& w : s)
        w = rng();
    return s;
}

void run_all_kernels(const std::vector<CompareSwap>& units, const std::vector<uint64_t>& in,
                     size_t words, uint32_t wires) {
    std::vector<uint64_t> ref = in;
    kernels::eval_scalar(units.data(), units.size(), ref.data(), words);

    std::vector<uint64_t> active = in;
    kernels::eval(units.data(), units.size(), active.data(), words);
    CHECK(active == ref);

#if defined(UTK_BUILD_AVX2)
    if (__builtin_cpu_supports("avx2")) {
        std::vector<uint64_t> avx = in;
        kernels::eval_avx2(units.data(), units.size(), avx.data(), words);
        CHECK(avx == ref);
    }
#endif
#if defined(UTK_BUILD_NEON)
    {
        std::vector<uint64_t> neon = in;
        kernels::eval_neon(units.data(), units.size(), neon.data(), words);
        CHECK(neon == ref);
    }
#endif
    (void)wires;
}

} // namespace

TEST_CASE("kernel variants agree on random unit lists") {
    std::mt19937_64 rng(101);
    for (size_t words : {size_t{1}, size_t{2}, size_t{3}, size_t{4}, size_t{5}, size_t{8},
                         size_t{17}, size_t{64}}) {
        for (int rep = 0; rep < 20; ++rep) {
            const uint32_t wires = 2 + static_cast<uint32_t>(rng() % 63);
            const auto units = oracle::random_units(rng, wires, 1 + rng() % 200);
            run_all_kernels(units, random_slices(rng, wires, words), words, wires);
        }
    }
}

TEST_CASE("kernel with zero units or zero words is a no-op") {
    std::mt19937_64 rng(7);
    const auto units = oracle::random_units(rng, 8, 10);
    std::vector<uint64_t> slices = random_slices(rng, 8, 2);
    std::vector<uint64_t> copy = slices;
    kernels::eval(units.data(), 0, slices.data(), 2);
    CHECK(slices == copy);
    kernels::eval(units.data(), units.size(), slices.data(), 0);
    CHECK(slices == copy);
}

TEST_CASE("single-lane kernel matches eval_bits exhaustively on bitonic-8") {
    const SortingNetwork net = gen_bitonic(8);
    for (uint32_t value = 0; value < 256; ++value) {
        const BitVector in = BitVector::from_uint(value, 8);
        std::vector<uint64_t> slices(8, 0);
        for (uint32_t w = 0; w < 8; ++w)
            slices[w] = in.get(w) ? 1 : 0;
        kernels::eval(net.units().data(), net.size(), slices.data(), 1);
        const BitVector out = eval_bits(net, in);
        for (uint32_t w = 0; w < 8; ++w)
            CHECK(((slices[w] & 1) != 0) == out.get(w));
    }
}

TEST_CASE("kernels conserve per-lane popcount and parity on arbitrary nets") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 50; ++rep) {
        const uint32_t wires = 2 + static_cast<uint32_t>(rng() % 31);
        const auto units = oracle::random_units(rng, wires, 1 + rng() % 100);
        const size_t words = 2;
        const auto in = random_slices(rng, wires, words);
        auto out = in;
        kernels::eval_scalar(units.data(), units.size(), out.data(), words);
        for (size_t q = 0; q < words; ++q) {
            for (int bit = 0; bit < 64; ++bit) {
                int before = 0, after = 0;
                for (uint32_t w = 0; w < wires; ++w) {
                    before += (in[w * words + q] >> bit) & 1;
                    after += (out[w * words + q] >> bit) & 1;
                }
                CHECK(before == after);
            }
        }
    }
}

TEST_CASE("active kernel name is one of the built variants") {
    const std::string name = kernels::active_name();
    CHECK((name == "scalar" || name == "avx2" || name == "neon"));
}
