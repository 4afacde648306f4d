#include <doctest.h>

#include <numeric>
#include <random>

#include "utk/neuron.hpp"

#include "oracles.hpp"

using namespace utk;

namespace {

const char* kDataDir = UTK_DATA_DIR;

NeuronConfig base_config(uint32_t n, DendriteKind kind, uint32_t k = 0) {
    NeuronConfig cfg;
    cfg.n = n;
    cfg.weights.assign(n, 1);
    cfg.threshold = 4;
    cfg.kind = kind;
    cfg.k = k;
    return cfg;
}

SpikeVolley volley_of(std::initializer_list<std::pair<uint32_t, uint32_t>> spikes, uint32_t n) {
    SpikeVolley v;
    v.spikes.resize(n);
    for (const auto& [input, t] : spikes)
        v.spikes[input] = t;
    return v;
}

} // namespace

TEST_CASE("rnl_response matches the piecewise definition") {
    CHECK(rnl_response(3, -1) == 0);
    CHECK(rnl_response(3, 1) == 2);
    CHECK(rnl_response(3, 9) == 3);
    for (int64_t w = 0; w <= 7; ++w)
        for (int64_t t = -4; t <= 16; ++t)
            CHECK(rnl_response(w, t) == oracle::rnl(w, t));
    CHECK_THROWS_AS(rnl_response(-1, 0), std::invalid_argument);
}

TEST_CASE("response is non-decreasing and capped, with 0/1 increments") {
    for (int64_t w = 0; w <= 7; ++w) {
        uint32_t prev = 0;
        for (int64_t t = -4; t <= 20; ++t) {
            const uint32_t cur = rnl_response(w, t);
            CHECK(cur >= prev);
            CHECK(cur <= static_cast<uint32_t>(w));
            CHECK(cur - prev <= 1);
            prev = cur;
        }
    }
}

TEST_CASE("synapse_pulse is the derivative of the response") {
    std::string bits;
    for (uint32_t t = 0; t < 8; ++t)
        bits += synapse_pulse(3, 2, t) ? '1' : '0';
    CHECK(bits == "00111000");

    for (uint32_t t = 0; t < 16; ++t) {
        CHECK(!synapse_pulse(3, std::nullopt, t));
        CHECK(!synapse_pulse(0, 4, t));
    }

    for (uint32_t w = 0; w <= 7; ++w)
        for (uint32_t s = 0; s <= 7; ++s)
            for (uint32_t t = 0; t < 20; ++t) {
                const uint32_t delta = oracle::rnl(w, static_cast<int64_t>(t) - s) -
                                       oracle::rnl(w, static_cast<int64_t>(t) - 1 - s);
                CHECK(delta <= 1);
                CHECK(synapse_pulse(w, s, t) == (delta == 1));
            }
}

TEST_CASE("dendrite_increment per kind") {
    const BitVector pulses = BitVector::from_string("10110100");
    CHECK(dendrite_increment(DendriteKind::PcCompact, 0, pulses) == 4);
    CHECK(dendrite_increment(DendriteKind::PcConventional, 0, pulses) == 4);
    CHECK(dendrite_increment(DendriteKind::TopkPc, 2, pulses) == 2);
    CHECK(dendrite_increment(DendriteKind::TopkPc, 2, BitVector::from_string("00000100")) == 1);
    CHECK_THROWS_AS(dendrite_increment(DendriteKind::TopkPc, 0, pulses),
                    std::invalid_argument);
}

TEST_CASE("structural dendrites agree with the functional contract") {
    for (DendriteKind kind : {DendriteKind::PcConventional, DendriteKind::PcCompact,
                              DendriteKind::SortingPc, DendriteKind::TopkPc}) {
        for (uint32_t k : {1u, 2u, 4u, 8u}) {
            if (!kind_uses_selector(kind) && k != 1)
                continue;
            NeuronConfig cfg = base_config(8, kind, kind_uses_selector(kind) ? k : 0);
            const DendriteModel model = DendriteModel::build(cfg);
            for (uint32_t v = 0; v < 256; ++v) {
                const BitVector pulses = BitVector::from_uint(v, 8);
                CHECK(model.increment(pulses) == dendrite_increment(kind, k, pulses));
            }
        }
    }
}

TEST_CASE("selector dendrite can run from a loaded source network") {
    NeuronConfig cfg = base_config(8, DendriteKind::TopkPc, 2);
    cfg.network = std::make_shared<const SortingNetwork>(load_network_file(
        std::string(kDataDir) + "/networks/optimal_8.net", NetworkOrigin::LoadedOptimal));
    const DendriteModel model = DendriteModel::build(cfg);
    for (uint32_t v = 0; v < 256; ++v) {
        const BitVector pulses = BitVector::from_uint(v, 8);
        CHECK(model.increment(pulses) == std::min<uint32_t>(pulses.popcount(), 2));
    }
}

TEST_CASE("worked example: two weight-3 spikes against threshold 4") {
    NeuronConfig cfg = base_config(4, DendriteKind::PcCompact);
    cfg.weights = {3, 3, 0, 0};
    cfg.threshold = 4;
    const SimResult r = simulate_neuron(cfg, volley_of({{0, 0}, {1, 0}}, 4));
    REQUIRE(r.increments.size() == cfg.trace_cycles());
    CHECK(r.increments[0] == 2);
    CHECK(r.increments[1] == 2);
    CHECK(r.increments[2] == 2);
    CHECK(r.increments[3] == 0);
    CHECK(r.trace[0] == 2);
    CHECK(r.trace[1] == 4);
    REQUIRE(r.fire_time.has_value());
    CHECK(*r.fire_time == 1);
}

TEST_CASE("silent volleys never fire and a zero threshold always does") {
    NeuronConfig cfg = base_config(4, DendriteKind::PcCompact);
    SpikeVolley silent;
    silent.spikes.resize(4);

    cfg.threshold = 1;
    const SimResult quiet = simulate_neuron(cfg, silent);
    CHECK(!quiet.fire_time.has_value());
    for (uint32_t v : quiet.trace)
        CHECK(v == 0);
    for (uint8_t b : quiet.axon)
        CHECK(b == 0);

    cfg.threshold = 0;
    const SimResult zero = simulate_neuron(cfg, silent);
    REQUIRE(zero.fire_time.has_value());
    CHECK(*zero.fire_time == 0);
}

TEST_CASE("config validation errors") {
    NeuronConfig cfg = base_config(4, DendriteKind::PcCompact);
    cfg.threshold = 32; // acc_bits = 5
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = base_config(4, DendriteKind::TopkPc, 0);
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = base_config(4, DendriteKind::PcCompact);
    cfg.weights = {1, 2};
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = base_config(6, DendriteKind::SortingPc, 2); // no network, not a power of two
    CHECK_THROWS_AS(validate_config(cfg), std::invalid_argument);

    cfg = base_config(4, DendriteKind::PcCompact);
    const SpikeVolley late = volley_of({{0, 9}}, 4); // window is 8
    CHECK_THROWS_AS(simulate_neuron(cfg, late), std::invalid_argument);
    CHECK_THROWS_AS(simulate_neuron(cfg, volley_of({}, 5)), std::invalid_argument);
}

TEST_CASE("membrane trace equals the summed response functions") {
    std::mt19937_64 rng(91);
    NeuronConfig cfg = base_config(16, DendriteKind::PcCompact);
    cfg.acc_bits = 16; // keep saturation out of the way
    cfg.threshold = 60000;
    for (auto& w : cfg.weights)
        w = static_cast<uint32_t>(rng() % 8);
    for (int rep = 0; rep < 50; ++rep) {
        const SpikeVolley volley = gen_volley(rng, 16, 0.5, cfg.window);
        const SimResult r = simulate_neuron(cfg, volley);
        for (uint32_t t = 0; t < cfg.trace_cycles(); ++t) {
            uint32_t expected = 0;
            for (uint32_t i = 0; i < 16; ++i)
                if (volley.spikes[i])
                    expected += oracle::rnl(cfg.weights[i],
                                            static_cast<int64_t>(t) - *volley.spikes[i]);
            CHECK(r.trace[t] == expected);
        }
    }
}

TEST_CASE("axon carries exactly one pulse of pulse_len ones") {
    std::mt19937_64 rng(92);
    NeuronConfig cfg = base_config(8, DendriteKind::PcCompact);
    cfg.threshold = 6;
    for (int rep = 0; rep < 100; ++rep) {
        const SpikeVolley volley = gen_volley(rng, 8, 0.6, cfg.window);
        const SimResult r = simulate_neuron(cfg, volley);
        size_t ones = 0;
        for (uint8_t b : r.axon)
            ones += b;
        if (!r.fire_time) {
            CHECK(ones == 0);
            continue;
        }
        CHECK(ones == cfg.pulse_len);
        for (uint32_t t = 0; t < r.axon.size(); ++t) {
            const bool inside =
                t >= *r.fire_time && t < *r.fire_time + cfg.pulse_len;
            CHECK(r.axon[t] == (inside ? 1 : 0));
        }
    }
}

TEST_CASE("saturation pins the trace at the register cap") {
    NeuronConfig cfg = base_config(16, DendriteKind::PcCompact);
    cfg.acc_bits = 3; // cap 7
    cfg.threshold = 7;
    cfg.weights.assign(16, 7);
    const SimResult r = simulate_neuron(
        cfg, volley_of({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}, {5, 0}}, 16));
    uint32_t prev = 0;
    for (uint32_t v : r.trace) {
        CHECK(v <= 7);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(r.trace.back() == 7);
}

TEST_CASE("truncating dendrites never beat the full counter") {
    std::mt19937_64 rng(93);
    NeuronConfig pc = base_config(16, DendriteKind::PcCompact);
    pc.threshold = 10;
    NeuronConfig catwalk = pc;
    catwalk.kind = DendriteKind::TopkPc;
    catwalk.k = 2;
    const DendriteModel pc_model = DendriteModel::build(pc);
    const DendriteModel ck_model = DendriteModel::build(catwalk);
    for (int rep = 0; rep < 300; ++rep) {
        const double density = (rep % 10) / 10.0;
        const SpikeVolley volley = gen_volley(rng, 16, density, pc.window);
        const SimResult full = simulate_neuron(pc, pc_model, volley);
        const SimResult cut = simulate_neuron(catwalk, ck_model, volley);
        for (uint32_t t = 0; t < pc.trace_cycles(); ++t)
            CHECK(cut.trace[t] <= full.trace[t]);
        if (cut.fire_time) {
            REQUIRE(full.fire_time.has_value());
            CHECK(*full.fire_time <= *cut.fire_time);
        }
    }
}

TEST_CASE("sparse volleys have identical behavior across dendrites") {
    std::mt19937_64 rng(94);
    NeuronConfig pc = base_config(16, DendriteKind::PcCompact);
    pc.threshold = 4;
    NeuronConfig catwalk = pc;
    catwalk.kind = DendriteKind::TopkPc;
    catwalk.k = 2;
    const DendriteModel pc_model = DendriteModel::build(pc);
    const DendriteModel ck_model = DendriteModel::build(catwalk);
    int sparse_seen = 0;
    for (int rep = 0; rep < 500 && sparse_seen < 100; ++rep) {
        const SpikeVolley volley = gen_volley(rng, 16, 0.08, pc.window);
        const SimResult full = simulate_neuron(pc, pc_model, volley);
        if (full.max_active > catwalk.k)
            continue;
        ++sparse_seen;
        const SimResult cut = simulate_neuron(catwalk, ck_model, volley);
        CHECK(cut.fire_time == full.fire_time);
        CHECK(cut.trace == full.trace);
        CHECK(cut.dropped_spikes == 0);
    }
    CHECK(sparse_seen >= 100);
}

TEST_CASE("dropped spikes count the truncated pulses") {
    NeuronConfig cfg = base_config(8, DendriteKind::TopkPc, 2);
    cfg.threshold = 31;
    // three simultaneous single-cycle pulses in one cycle: one spike dropped
    const SimResult r = simulate_neuron(cfg, volley_of({{0, 3}, {3, 3}, {6, 3}}, 8));
    CHECK(r.max_active == 3);
    CHECK(r.dropped_spikes == 1);
    CHECK(r.increments[3] == 2);
}

TEST_CASE("compare_designs aggregates matches and sparsity") {
    std::mt19937_64 rng(95);
    NeuronConfig pc = base_config(16, DendriteKind::PcCompact);
    pc.threshold = 4;
    NeuronConfig same = pc;
    std::vector<SpikeVolley> volleys;
    for (int v = 0; v < 50; ++v)
        volleys.push_back(gen_volley(rng, 16, 0.3, pc.window));

    const EquivalenceReport self = compare_designs(pc, same, volleys);
    CHECK(self.volleys == 50);
    CHECK(self.fire_matches == 50);
    CHECK(self.trace_matches == 50);
    CHECK(self.sparse_violations == 0);

    NeuronConfig catwalk = pc;
    catwalk.kind = DendriteKind::TopkPc;
    catwalk.k = 2;
    const EquivalenceReport report = compare_designs(pc, catwalk, volleys);
    CHECK(report.volleys == 50);
    CHECK(report.sparse_violations == 0);
    CHECK(report.rows.size() == 50);

    NeuronConfig different = catwalk;
    different.threshold = 9;
    CHECK_THROWS_AS(compare_designs(pc, different, volleys), std::invalid_argument);
}

TEST_CASE("volley generation is seed-deterministic") {
    std::mt19937_64 a(123), b(123);
    for (int rep = 0; rep < 20; ++rep) {
        const SpikeVolley va = gen_volley(a, 32, 0.2, 8);
        const SpikeVolley vb = gen_volley(b, 32, 0.2, 8);
        CHECK(va.spikes == vb.spikes);
    }
    std::mt19937_64 c(7);
    const SpikeVolley none = gen_volley(c, 16, 0.0, 8);
    for (const auto& s : none.spikes)
        CHECK(!s.has_value());
    const SpikeVolley all = gen_volley(c, 16, 1.0, 8);
    for (const auto& s : all.spikes)
        CHECK(s.has_value());
}
