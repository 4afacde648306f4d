#include "utk/neuron.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace utk {

std::string_view to_string(DendriteKind kind) {
    switch (kind) {
    case DendriteKind::PcConventional: return "pc-conventional";
    case DendriteKind::PcCompact: return "pc-compact";
    case DendriteKind::SortingPc: return "sorting-pc";
    case DendriteKind::TopkPc: return "topk-pc";
    }
    return "unknown";
}

std::optional<DendriteKind> dendrite_kind_from_string(std::string_view name) {
    if (name == "pc-conventional")
        return DendriteKind::PcConventional;
    if (name == "pc-compact")
        return DendriteKind::PcCompact;
    if (name == "sorting-pc")
        return DendriteKind::SortingPc;
    if (name == "topk-pc")
        return DendriteKind::TopkPc;
    return std::nullopt;
}

bool kind_uses_selector(DendriteKind kind) {
    return kind == DendriteKind::SortingPc || kind == DendriteKind::TopkPc;
}

void validate_config(const NeuronConfig& cfg) {
    if (cfg.n < 1)
        throw std::invalid_argument("neuron needs at least one input");
    if (cfg.weights.size() != cfg.n)
        throw std::invalid_argument("expected " + std::to_string(cfg.n) + " weights, got " +
                                    std::to_string(cfg.weights.size()));
    if (cfg.weight_max > 4096)
        throw std::invalid_argument("weight_max out of range");
    for (uint32_t w : cfg.weights)
        if (w > cfg.weight_max)
            throw std::invalid_argument("weight " + std::to_string(w) + " exceeds weight_max " +
                                        std::to_string(cfg.weight_max));
    if (cfg.acc_bits < 1 || cfg.acc_bits > 31)
        throw std::invalid_argument("acc_bits must be in [1, 31]");
    if (cfg.threshold >= (uint32_t{1} << cfg.acc_bits))
        throw std::invalid_argument("threshold " + std::to_string(cfg.threshold) +
                                    " is unreachable with " + std::to_string(cfg.acc_bits) +
                                    " accumulator bits");
    if (cfg.window < 1)
        throw std::invalid_argument("window must be at least one cycle");
    if (cfg.pulse_len < 1)
        throw std::invalid_argument("pulse_len must be at least one cycle");
    if (kind_uses_selector(cfg.kind)) {
        if (cfg.k < 1 || cfg.k > cfg.n)
            throw std::invalid_argument(std::string(to_string(cfg.kind)) +
                                        " requires k in [1, n]");
        if (cfg.network && cfg.network->n() != cfg.n)
            throw std::invalid_argument("selector source network width does not match n");
        if (!cfg.network && !std::has_single_bit(cfg.n))
            throw std::invalid_argument("no source network given and n is not a power of two");
    }
}

uint32_t rnl_response(int64_t w, int64_t t) {
    if (w < 0)
        throw std::invalid_argument("weight must be non-negative");
    if (t < 0)
        return 0;
    if (t < w)
        return static_cast<uint32_t>(t + 1);
    return static_cast<uint32_t>(w);
}

bool synapse_pulse(uint32_t w, std::optional<uint32_t> spike, uint32_t cycle) {
    if (!spike)
        return false;
    return cycle >= *spike && cycle < static_cast<uint64_t>(*spike) + w;
}

uint32_t dendrite_increment(DendriteKind kind, uint32_t k, const BitVector& pulses) {
    const uint32_t count = pulses.popcount();
    if (!kind_uses_selector(kind))
        return count;
    if (k < 1)
        throw std::invalid_argument(std::string(to_string(kind)) + " requires k >= 1");
    return std::min(count, k);
}

DendriteModel DendriteModel::build(const NeuronConfig& cfg) {
    validate_config(cfg);
    DendriteModel m;
    m.kind_ = cfg.kind;
    m.n_ = cfg.n;
    m.k_ = cfg.k;
    if (kind_uses_selector(cfg.kind)) {
        m.network_ = cfg.network
                         ? cfg.network
                         : std::make_shared<const SortingNetwork>(gen_bitonic(cfg.n));
        if (cfg.kind == DendriteKind::TopkPc)
            m.selector_ = prune_topk(*m.network_, cfg.k);
    }
    return m;
}

uint32_t DendriteModel::k_effective() const {
    return kind_uses_selector(kind_) ? k_ : n_;
}

uint32_t DendriteModel::increment(const BitVector& pulses) const {
    if (pulses.width() != n_)
        throw std::invalid_argument("pulse vector width does not match input count");
    switch (kind_) {
    case DendriteKind::PcConventional:
    case DendriteKind::PcCompact:
        return pulses.popcount();
    case DendriteKind::SortingPc: {
        const BitVector sorted = eval_bits(*network_, pulses);
        uint32_t count = 0;
        for (uint32_t q = n_ - k_; q < n_; ++q)
            count += sorted.get(q) ? 1 : 0;
        return count;
    }
    case DendriteKind::TopkPc:
        return eval_topk(*selector_, pulses).popcount();
    }
    return 0;
}

std::vector<uint32_t> DendriteModel::increments(const TemporalStream& pulses) const {
    if (pulses.wires() != n_)
        throw std::invalid_argument("pulse stream width does not match input count");
    std::vector<uint32_t> inc(pulses.cycles(), 0);
    switch (kind_) {
    case DendriteKind::PcConventional:
    case DendriteKind::PcCompact:
        for (uint32_t t = 0; t < pulses.cycles(); ++t)
            inc[t] = pulses.popcount_at(t);
        return inc;
    case DendriteKind::SortingPc: {
        const TemporalStream sorted = eval_temporal(*network_, pulses);
        for (uint32_t t = 0; t < pulses.cycles(); ++t)
            for (uint32_t q = n_ - k_; q < n_; ++q)
                inc[t] += sorted.get(q, t) ? 1 : 0;
        return inc;
    }
    case DendriteKind::TopkPc: {
        const TemporalStream selected = eval_topk_temporal(*selector_, pulses);
        for (uint32_t t = 0; t < pulses.cycles(); ++t)
            inc[t] = selected.popcount_at(t);
        return inc;
    }
    }
    return inc;
}

TemporalStream volley_pulses(const NeuronConfig& cfg, const SpikeVolley& volley) {
    if (volley.n() != cfg.n)
        throw std::invalid_argument("volley has " + std::to_string(volley.n()) +
                                    " inputs, config expects " + std::to_string(cfg.n));
    const uint32_t cycles = cfg.trace_cycles();
    TemporalStream pulses(cfg.n, cycles);
    for (uint32_t i = 0; i < cfg.n; ++i) {
        const auto& spike = volley.spikes[i];
        if (!spike)
            continue;
        if (*spike >= cfg.window)
            throw std::invalid_argument("spike time " + std::to_string(*spike) +
                                        " outside window [0, " + std::to_string(cfg.window) +
                                        ")");
        const uint64_t end = std::min<uint64_t>(*spike + cfg.weights[i], cycles);
        for (uint64_t t = *spike; t < end; ++t)
            pulses.set(i, static_cast<uint32_t>(t), true);
    }
    return pulses;
}

SimResult simulate_neuron(const NeuronConfig& cfg, const DendriteModel& dendrite,
                          const SpikeVolley& volley) {
    validate_config(cfg);
    const TemporalStream pulses = volley_pulses(cfg, volley);
    const uint32_t cycles = cfg.trace_cycles();

    SimResult result;
    result.increments = dendrite.increments(pulses);
    result.trace.resize(cycles, 0);

    const uint32_t k_eff = dendrite.k_effective();
    const uint32_t cap = (uint32_t{1} << cfg.acc_bits) - 1;
    uint32_t reg = 0;
    for (uint32_t t = 0; t < cycles; ++t) {
        const uint32_t active = pulses.popcount_at(t);
        result.max_active = std::max(result.max_active, active);
        if (kind_uses_selector(cfg.kind) && active > k_eff)
            result.dropped_spikes += active - k_eff;
        reg = std::min<uint64_t>(static_cast<uint64_t>(reg) + result.increments[t], cap);
        result.trace[t] = reg;
        const bool crossed =
            cfg.strict_threshold ? reg > cfg.threshold : reg >= cfg.threshold;
        if (!result.fire_time && crossed)
            result.fire_time = t;
    }

    result.axon.assign(cycles + cfg.pulse_len, 0);
    if (result.fire_time)
        for (uint32_t t = *result.fire_time; t < *result.fire_time + cfg.pulse_len; ++t)
            result.axon[t] = 1;
    return result;
}

SimResult simulate_neuron(const NeuronConfig& cfg, const SpikeVolley& volley) {
    return simulate_neuron(cfg, DendriteModel::build(cfg), volley);
}

EquivalenceReport compare_designs(const NeuronConfig& base, const NeuronConfig& alt,
                                  const std::vector<SpikeVolley>& volleys) {
    if (base.n != alt.n || base.weights != alt.weights || base.threshold != alt.threshold ||
        base.window != alt.window || base.pulse_len != alt.pulse_len ||
        base.acc_bits != alt.acc_bits || base.weight_max != alt.weight_max ||
        base.strict_threshold != alt.strict_threshold)
        throw std::invalid_argument("configs may differ only in dendrite kind/k/network");

    const DendriteModel base_model = DendriteModel::build(base);
    const DendriteModel alt_model = DendriteModel::build(alt);
    const uint32_t k_both = std::min(base_model.k_effective(), alt_model.k_effective());

    EquivalenceReport report;
    report.rows.reserve(volleys.size());
    for (size_t v = 0; v < volleys.size(); ++v) {
        const SimResult rb = simulate_neuron(base, base_model, volleys[v]);
        const SimResult ra = simulate_neuron(alt, alt_model, volleys[v]);
        VolleyComparison row;
        row.index = static_cast<uint32_t>(v);
        row.fire_base = rb.fire_time;
        row.fire_alt = ra.fire_time;
        row.fire_match = rb.fire_time == ra.fire_time;
        row.trace_match = rb.trace == ra.trace;
        row.max_active = std::max(rb.max_active, ra.max_active);
        row.dropped_alt = ra.dropped_spikes;
        report.volleys++;
        report.fire_matches += row.fire_match ? 1 : 0;
        report.trace_matches += row.trace_match ? 1 : 0;
        if (row.max_active <= k_both) {
            report.sparse_volleys++;
            if (!row.fire_match || !row.trace_match)
                report.sparse_violations++;
        }
        report.rows.push_back(row);
    }
    return report;
}

SpikeVolley gen_volley(std::mt19937_64& rng, uint32_t n, double density, uint32_t window) {
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("density must be in [0, 1]");
    if (window < 1)
        throw std::invalid_argument("window must be at least one cycle");
    SpikeVolley volley;
    volley.spikes.resize(n);
    for (uint32_t i = 0; i < n; ++i) {
        // 53-bit uniform draw; mt19937_64 output is fully specified, so the
        // same seed reproduces the same volleys everywhere.
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        if (u < density)
            volley.spikes[i] = static_cast<uint32_t>(rng() % window);
        else
            rng(); // keep the draw count per input fixed
    }
    return volley;
}

} // namespace utk
