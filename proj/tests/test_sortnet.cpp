#include <doctest.h>

#include <algorithm>
#include <random>

#include "utk/sortnet.hpp"

#include "oracles.hpp"

using namespace utk;

namespace {

const char* kDataDir = UTK_DATA_DIR;

SortingNetwork load_optimal(uint32_t n) {
    return load_network_file(std::string(kDataDir) + "/networks/optimal_" + std::to_string(n) +
                                 ".net",
                             NetworkOrigin::LoadedOptimal);
}

} // namespace

TEST_CASE("bitonic unit counts match the closed form and the loop form") {
    CHECK(gen_bitonic(2).size() == 1);
    CHECK(gen_bitonic(8).size() == 24);
    CHECK(gen_bitonic(16).size() == 80);
    for (uint32_t n : {2u, 4u, 8u, 16u, 32u, 64u}) {
        uint32_t levels = 0;
        while ((1u << levels) < n)
            ++levels;
        const uint64_t expected = uint64_t{n} / 2 * levels * (levels + 1) / 2;
        CHECK(gen_bitonic(n).size() == expected);
        CHECK(oracle::classic_bitonic_units(n) == expected);
    }
}

TEST_CASE("bitonic rejects bad widths") {
    CHECK_THROWS_AS(gen_bitonic(0), std::invalid_argument);
    CHECK_THROWS_AS(gen_bitonic(1), std::invalid_argument);
    CHECK_THROWS_AS(gen_bitonic(6), std::invalid_argument);
    CHECK_THROWS_AS(gen_bitonic(128), std::invalid_argument);
}

TEST_CASE("eval_bits basics") {
    SortingNetwork swap2(2, {{0, 1}}, NetworkOrigin::LoadedCustom);
    CHECK(eval_bits(swap2, BitVector::from_string("10")).to_string() == "01");

    const SortingNetwork net = gen_bitonic(8);
    CHECK(eval_bits(net, BitVector::from_string("10110100")).to_string() == "00001111");
    CHECK(eval_bits(net, BitVector::from_string("00000000")).to_string() == "00000000");

    CHECK_THROWS_AS(eval_bits(net, BitVector(4)), std::invalid_argument);
}

TEST_CASE("eval_bits sorts every pattern on generated networks") {
    for (uint32_t n : {2u, 4u, 8u}) {
        const SortingNetwork net = gen_bitonic(n);
        for (uint64_t v = 0; v < (uint64_t{1} << n); ++v) {
            const BitVector in = BitVector::from_uint(v, n);
            CHECK(eval_bits(net, in) == oracle::sort_bits(in));
        }
    }
}

TEST_CASE("popcount is conserved by arbitrary unit lists") {
    std::mt19937_64 rng(33);
    for (int rep = 0; rep < 200; ++rep) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 30);
        SortingNetwork net(n, oracle::random_units(rng, n, 1 + rng() % 50),
                           NetworkOrigin::LoadedCustom);
        const BitVector in = oracle::random_bits(rng, n);
        CHECK(eval_bits(net, in).popcount() == in.popcount());
    }
}

TEST_CASE("validated sorters are idempotent") {
    std::mt19937_64 rng(44);
    for (uint32_t n : {4u, 8u, 16u}) {
        const SortingNetwork net = gen_bitonic(n);
        for (int rep = 0; rep < 100; ++rep) {
            const BitVector in = oracle::random_bits(rng, n);
            const BitVector once = eval_bits(net, in);
            CHECK(eval_bits(net, once) == once);
        }
    }
}

TEST_CASE("eval_temporal on nested monotone streams gives min and max") {
    SortingNetwork swap2(2, {{0, 1}}, NetworkOrigin::LoadedCustom);
    const std::string_view rows[2] = {"00111111", "00001111"}; // values 6 and 4
    const TemporalStream in = TemporalStream::from_strings(rows);
    const TemporalStream out = eval_temporal(swap2, in);
    CHECK(out.to_string(0) == "00001111"); // min = 4
    CHECK(out.to_string(1) == "00111111"); // max = 6
}

TEST_CASE("eval_temporal sorts monotone stream values") {
    std::mt19937_64 rng(55);
    const SortingNetwork net = gen_bitonic(8);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<uint32_t> values(8);
        for (auto& v : values)
            v = static_cast<uint32_t>(rng() % 17);
        const TemporalStream in = TemporalStream::monotone(values, 16);
        const TemporalStream out = eval_temporal(net, in);
        std::vector<uint32_t> expected = values;
        std::sort(expected.begin(), expected.end());
        for (uint32_t w = 0; w < 8; ++w)
            CHECK(out.ones(w) == expected[w]);
    }
}

TEST_CASE("eval_temporal equals cycle-wise eval_bits") {
    std::mt19937_64 rng(66);
    for (int rep = 0; rep < 100; ++rep) {
        const uint32_t n = 2 + static_cast<uint32_t>(rng() % 7);
        const uint32_t cycles = 1 + static_cast<uint32_t>(rng() % 8);
        SortingNetwork net(n, oracle::random_units(rng, n, 1 + rng() % 30),
                           NetworkOrigin::LoadedCustom);
        const TemporalStream in = oracle::random_stream(rng, n, cycles);
        const TemporalStream out = eval_temporal(net, in);
        for (uint32_t c = 0; c < cycles; ++c)
            CHECK(out.slice(c) == eval_bits(net, in.slice(c)));
    }
    // single-cycle streams, every pattern
    const SortingNetwork net = gen_bitonic(8);
    for (uint32_t v = 0; v < 256; ++v) {
        TemporalStream in(8, 1);
        for (uint32_t w = 0; w < 8; ++w)
            in.set(w, 0, ((v >> w) & 1) != 0);
        CHECK(eval_temporal(net, in).slice(0) == eval_bits(net, in.slice(0)));
    }
}

TEST_CASE("per-cycle popcount is conserved for pulse inputs") {
    std::mt19937_64 rng(77);
    const SortingNetwork net = gen_bitonic(8);
    for (int rep = 0; rep < 50; ++rep) {
        const TemporalStream in = oracle::random_stream(rng, 8, 12);
        const TemporalStream out = eval_temporal(net, in);
        for (uint32_t c = 0; c < 12; ++c)
            CHECK(out.popcount_at(c) == in.popcount_at(c));
    }
}

TEST_CASE("validate_sorter accepts generated and bundled networks") {
    const ValidationReport bit8 = validate_sorter(gen_bitonic(8));
    CHECK(bit8.passed);
    CHECK(bit8.exhaustive);
    CHECK(bit8.vectors_checked == 256);

    const ValidationReport opt8 = validate_sorter(load_optimal(8));
    CHECK(opt8.passed);
    CHECK(opt8.vectors_checked == 256);
}

TEST_CASE("validate_sorter finds a counterexample in a damaged network") {
    const SortingNetwork net = gen_bitonic(8);
    std::vector<CompareSwap> damaged(net.units().begin(), net.units().end() - 1);
    SortingNetwork bad(8, std::move(damaged), NetworkOrigin::LoadedCustom);
    const ValidationReport report = validate_sorter(bad);
    CHECK(!report.passed);
    REQUIRE(report.counterexample.has_value());
    const BitVector out = eval_bits(bad, *report.counterexample);
    CHECK(out != oracle::sort_bits(*report.counterexample));
}

TEST_CASE("validate_sorter handles wide networks with structured patterns") {
    const SortingNetwork net = load_optimal(32);
    const ValidationReport report = validate_sorter(net, 2048);
    CHECK(report.passed);
    CHECK(!report.exhaustive);
    CHECK(report.vectors_checked >= 2 + 2 * 32 + 2048);
}

TEST_CASE("network files round-trip byte-stably") {
    const SortingNetwork net = gen_bitonic(8);
    const std::string text = serialize(net);
    const SortingNetwork back = parse_network(text);
    CHECK(back.n() == net.n());
    CHECK(std::equal(back.units().begin(), back.units().end(), net.units().begin(),
                     net.units().end()));
    CHECK(serialize(back) == text);
}

TEST_CASE("network parse errors carry line numbers") {
    CHECK_THROWS_AS(parse_network("n 2\n"), ParseError); // no units
    CHECK_THROWS_AS(parse_network(""), ParseError);
    CHECK_THROWS_AS(parse_network("width 4\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_network("n 4\n0 4\n"), ParseError); // index >= n
    CHECK_THROWS_AS(parse_network("n 4\n0 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_network("n=2; unit 0 1"), ParseError);

    try {
        parse_network("n 4\n0 1\n3 1\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(std::string(e.what()).find("i < j") != std::string::npos);
    }

    const SortingNetwork ok =
        parse_network("# comment\n\nn 2\n# another\n0 1\n");
    CHECK(ok.n() == 2);
    CHECK(ok.size() == 1);
}

TEST_CASE("bundled minimal networks have the published unit count for n=8") {
    CHECK(load_optimal(8).size() == 19);
}
