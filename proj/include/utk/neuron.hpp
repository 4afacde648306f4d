#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "utk/bitvec.hpp"
#include "utk/sortnet.hpp"
#include "utk/topk.hpp"

namespace utk {

enum class DendriteKind { PcConventional, PcCompact, SortingPc, TopkPc };

std::string_view to_string(DendriteKind kind);
std::optional<DendriteKind> dendrite_kind_from_string(std::string_view name);
bool kind_uses_selector(DendriteKind kind);

// One spike time per input, or nothing (a value of infinity: the input
// stays silent for the whole window).
struct SpikeVolley {
    std::vector<std::optional<uint32_t>> spikes;

    uint32_t n() const { return static_cast<uint32_t>(spikes.size()); }
};

struct NeuronConfig {
    uint32_t n = 0;
    std::vector<uint32_t> weights;
    uint32_t threshold = 0;
    DendriteKind kind = DendriteKind::PcCompact;
    uint32_t k = 0;          // selector kinds only
    uint32_t window = 8;     // spike times live in [0, window)
    uint32_t pulse_len = 8;  // axon pulse width in cycles
    uint32_t acc_bits = 5;   // membrane register width
    uint32_t weight_max = 7;
    bool strict_threshold = false; // fire on > instead of >=
    // Selector source for sorting-pc / topk-pc. When absent a bitonic
    // network is generated (n must then be a power of two).
    std::shared_ptr<const SortingNetwork> network;

    uint32_t trace_cycles() const { return window + weight_max; }
};

// Throws std::invalid_argument describing the first problem found.
void validate_config(const NeuronConfig& cfg);

// Ramp-no-leak response: 0 before the spike, then climbing by one per
// cycle for w cycles, then holding at w.
uint32_t rnl_response(int64_t w, int64_t t);

// Per-cycle pulse bit of one synapse; the discrete derivative of the
// response function above.
bool synapse_pulse(uint32_t w, std::optional<uint32_t> spike, uint32_t cycle);

// Functional contract for one accumulation step: popcount for the PC
// kinds, min(popcount, k) for the selector kinds.
uint32_t dendrite_increment(DendriteKind kind, uint32_t k, const BitVector& pulses);

// Structural dendrite: selector kinds run a real pruned network rather
// than the min() shortcut, so the simulated hardware path is exercised.
class DendriteModel {
public:
    static DendriteModel build(const NeuronConfig& cfg);

    DendriteKind kind() const { return kind_; }
    uint32_t k_effective() const; // n for PC kinds, k otherwise
    const TopKSelector* selector() const { return selector_ ? &*selector_ : nullptr; }

    uint32_t increment(const BitVector& pulses) const;
    std::vector<uint32_t> increments(const TemporalStream& pulses) const;

private:
    DendriteKind kind_ = DendriteKind::PcCompact;
    uint32_t n_ = 0;
    uint32_t k_ = 0;
    std::shared_ptr<const SortingNetwork> network_;
    std::optional<TopKSelector> selector_;
};

struct SimResult {
    std::optional<uint32_t> fire_time;
    std::vector<uint32_t> trace;      // saturating membrane potential per cycle
    std::vector<uint32_t> increments; // dendrite output per cycle
    std::vector<uint8_t> axon;        // trace length + pulse_len bits
    uint64_t dropped_spikes = 0;      // selector kinds: pulses lost to truncation
    uint32_t max_active = 0;          // peak simultaneous input pulses
};

// Expands a volley into per-input pulse bits over the full trace window.
TemporalStream volley_pulses(const NeuronConfig& cfg, const SpikeVolley& volley);

SimResult simulate_neuron(const NeuronConfig& cfg, const SpikeVolley& volley);
SimResult simulate_neuron(const NeuronConfig& cfg, const DendriteModel& dendrite,
                          const SpikeVolley& volley);

struct VolleyComparison {
    uint32_t index = 0;
    std::optional<uint32_t> fire_base;
    std::optional<uint32_t> fire_alt;
    bool fire_match = false;
    bool trace_match = false;
    uint32_t max_active = 0;
    uint64_t dropped_alt = 0;
};

struct EquivalenceReport {
    std::vector<VolleyComparison> rows;
    uint64_t volleys = 0;
    uint64_t fire_matches = 0;
    uint64_t trace_matches = 0;
    // Volleys whose peak activity fits under both designs' k, and how many
    // of those failed to match exactly (must be zero).
    uint64_t sparse_volleys = 0;
    uint64_t sparse_violations = 0;
};

// Both configs must agree on everything except dendrite kind, k, and the
// selector source network.
EquivalenceReport compare_designs(const NeuronConfig& base, const NeuronConfig& alt,
                                  const std::vector<SpikeVolley>& volleys);

// Seeded volley source: each input spikes with probability `density` at a
// uniform time in [0, window). mt19937_64 keeps runs reproducible.
SpikeVolley gen_volley(std::mt19937_64& rng, uint32_t n, double density, uint32_t window);

} // namespace utk
