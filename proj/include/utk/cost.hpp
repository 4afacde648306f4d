#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "utk/neuron.hpp"
#include "utk/sortnet.hpp"
#include "utk/topk.hpp"

namespace utk {

// Technology-neutral cell weights. These are documented model constants;
// comparisons between designs are meaningful, absolute totals are not.
inline constexpr uint64_t kGeAnd2 = 1;
inline constexpr uint64_t kGeOr2 = 1;
inline constexpr uint64_t kGeHalfAdder = 3;
inline constexpr uint64_t kGeFullAdder = 5;
inline constexpr uint64_t kGeDff = 4;

struct GateReport {
    std::string label;
    uint64_t and2 = 0;
    uint64_t or2 = 0;
    uint64_t ha = 0;
    uint64_t fa = 0;
    uint64_t removed_gates = 0; // gates dropped from half units
    uint64_t selector_ge = 0;   // 2-input gate share of the total
    uint64_t pc_ge = 0;         // adder share of the total

    uint64_t total_ge() const {
        return and2 * kGeAnd2 + or2 * kGeOr2 + ha * kGeHalfAdder + fa * kGeFullAdder;
    }
};

// Full adders of the chained parallel counter; exactly n-1 when n is a
// power of two (two-input reductions use a zero-tied carry-in).
uint64_t compact_pc_fa_count(uint32_t n);

struct AdderCells {
    uint64_t ha = 0;
    uint64_t fa = 0;
};

// Pairwise ripple-carry adder tree summing n single bits.
AdderCells conventional_pc_cells(uint32_t n);

GateReport sorter_gates(const SortingNetwork& net);
GateReport selector_gates(const TopKSelector& sel);

// Dendrite cost per kind. Selector kinds require a source network and add
// a small chained counter over the k selected wires.
GateReport dendrite_gates(DendriteKind kind, uint32_t n, uint32_t k,
                          const SortingNetwork* source);

// Register/adder estimate for the soma and axon, identical across designs
// for a given configuration (it never changes a ranking).
struct SomaAxonEstimate {
    uint64_t fa = 0;
    uint64_t dff = 0;
    uint64_t logic_ge = 0;

    uint64_t ge() const { return fa * kGeFullAdder + dff * kGeDff + logic_ge; }
};

SomaAxonEstimate soma_axon_estimate(uint32_t acc_bits, uint32_t pulse_len);

struct RankedDesign {
    std::string design;
    DendriteKind kind = DendriteKind::PcCompact;
    GateReport report;
    uint64_t dendrite_ge = 0;
    uint64_t neuron_ge = 0; // dendrite + shared soma/axon estimate
};

// All four dendrite kinds at (n, k); selector kinds appear once per source
// network. Sorted by dendrite GE ascending, label as tie-break.
std::vector<RankedDesign> rank_designs(
    uint32_t n, uint32_t k,
    std::span<const std::pair<std::string, const SortingNetwork*>> sources,
    uint32_t acc_bits = 5, uint32_t pulse_len = 8);

} // namespace utk
