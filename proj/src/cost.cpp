#include "utk/cost.hpp"

#include <algorithm>
#include <stdexcept>

namespace utk {

namespace {

uint32_t ceil_log2(uint32_t v) {
    uint32_t bits = 0;
    while ((uint32_t{1} << bits) < v)
        ++bits;
    return bits;
}

} // namespace

uint64_t compact_pc_fa_count(uint32_t n) {
    if (n < 1)
        throw std::invalid_argument("counter needs at least one input");
    uint64_t fas = 0;
    std::vector<uint64_t> columns{n};
    for (size_t w = 0; w < columns.size(); ++w) {
        uint64_t count = columns[w];
        uint64_t carries = 0;
        while (count >= 3) {
            count -= 2;
            ++fas;
            ++carries;
        }
        if (count == 2) {
            count = 1;
            ++fas;
            ++carries;
        }
        columns[w] = count;
        if (carries > 0) {
            if (w + 1 == columns.size())
                columns.push_back(0);
            columns[w + 1] += carries;
        }
    }
    return fas;
}

AdderCells conventional_pc_cells(uint32_t n) {
    if (n < 1)
        throw std::invalid_argument("counter needs at least one input");
    AdderCells cells;
    std::vector<uint32_t> widths(n, 1);
    while (widths.size() > 1) {
        std::vector<uint32_t> next;
        next.reserve(widths.size() / 2 + 1);
        for (size_t q = 0; q + 1 < widths.size(); q += 2) {
            const uint32_t lo = std::min(widths[q], widths[q + 1]);
            const uint32_t hi = std::max(widths[q], widths[q + 1]);
            // Ripple add: one HA at the bottom, FAs through the overlap,
            // then HAs to ripple the carry across the wider operand.
            cells.ha += 1 + (hi - lo);
            cells.fa += lo - 1;
            next.push_back(hi + 1);
        }
        if (widths.size() % 2 != 0)
            next.push_back(widths.back());
        widths = std::move(next);
    }
    return cells;
}

GateReport sorter_gates(const SortingNetwork& net) {
    GateReport report;
    report.label = "sorter n=" + std::to_string(net.n()) + " (" +
                   std::string(to_string(net.origin())) + ")";
    report.and2 = net.size();
    report.or2 = net.size();
    report.selector_ge = report.total_ge();
    return report;
}

GateReport selector_gates(const TopKSelector& sel) {
    GateReport report;
    report.label = "top-" + std::to_string(sel.k()) + " selector n=" + std::to_string(sel.n());
    uint64_t dead_min = 0;
    uint64_t dead_max = 0;
    for (const auto& h : sel.half()) {
        if (h.dead_wire == sel.mandatory()[h.pos].i)
            ++dead_min; // AND output unused
        else
            ++dead_max; // OR output unused
    }
    report.and2 = sel.mandatory().size() - dead_min;
    report.or2 = sel.mandatory().size() - dead_max;
    report.removed_gates = sel.half().size();
    report.selector_ge = report.total_ge();
    return report;
}

GateReport dendrite_gates(DendriteKind kind, uint32_t n, uint32_t k,
                          const SortingNetwork* source) {
    GateReport report;
    switch (kind) {
    case DendriteKind::PcConventional: {
        const AdderCells cells = conventional_pc_cells(n);
        report.label = "pc-conventional n=" + std::to_string(n);
        report.ha = cells.ha;
        report.fa = cells.fa;
        report.pc_ge = report.total_ge();
        return report;
    }
    case DendriteKind::PcCompact:
        report.label = "pc-compact n=" + std::to_string(n);
        report.fa = compact_pc_fa_count(n);
        report.pc_ge = report.total_ge();
        return report;
    case DendriteKind::SortingPc: {
        if (source == nullptr)
            throw std::invalid_argument("sorting-pc needs a source network");
        if (source->n() != n)
            throw std::invalid_argument("source network width does not match n");
        if (k < 1 || k > n)
            throw std::invalid_argument("k must be in [1, n]");
        report = sorter_gates(*source);
        report.label = "sorting-pc n=" + std::to_string(n) + " k=" + std::to_string(k);
        report.fa += compact_pc_fa_count(k);
        report.pc_ge = report.fa * kGeFullAdder;
        return report;
    }
    case DendriteKind::TopkPc: {
        if (source == nullptr)
            throw std::invalid_argument("topk-pc needs a source network");
        if (source->n() != n)
            throw std::invalid_argument("source network width does not match n");
        report = selector_gates(prune_topk(*source, k));
        report.label = "topk-pc n=" + std::to_string(n) + " k=" + std::to_string(k);
        report.fa += compact_pc_fa_count(k);
        report.pc_ge = report.fa * kGeFullAdder;
        return report;
    }
    }
    throw std::invalid_argument("unknown dendrite kind");
}

SomaAxonEstimate soma_axon_estimate(uint32_t acc_bits, uint32_t pulse_len) {
    SomaAxonEstimate est;
    const uint32_t counter_bits = ceil_log2(pulse_len + 1);
    est.fa = acc_bits;                      // membrane accumulate adder
    est.dff = acc_bits + counter_bits;      // potential register + pulse counter
    est.logic_ge = acc_bits + counter_bits; // threshold compare + counter control
    return est;
}

std::vector<RankedDesign> rank_designs(
    uint32_t n, uint32_t k,
    std::span<const std::pair<std::string, const SortingNetwork*>> sources, uint32_t acc_bits,
    uint32_t pulse_len) {
    const uint64_t shared = soma_axon_estimate(acc_bits, pulse_len).ge();
    std::vector<RankedDesign> table;

    auto add = [&](const std::string& name, DendriteKind kind, const SortingNetwork* src) {
        RankedDesign row;
        row.design = name;
        row.kind = kind;
        row.report = dendrite_gates(kind, n, k, src);
        row.dendrite_ge = row.report.total_ge();
        row.neuron_ge = row.dendrite_ge + shared;
        table.push_back(std::move(row));
    };

    add("pc-conventional", DendriteKind::PcConventional, nullptr);
    add("pc-compact", DendriteKind::PcCompact, nullptr);
    for (const auto& [label, net] : sources) {
        add("sorting-pc[" + label + "]", DendriteKind::SortingPc, net);
        add("topk-pc[" + label + "]", DendriteKind::TopkPc, net);
    }

    std::sort(table.begin(), table.end(), [](const RankedDesign& a, const RankedDesign& b) {
        return a.dendrite_ge != b.dendrite_ge ? a.dendrite_ge < b.dendrite_ge
                                              : a.design < b.design;
    });
    return table;
}

} // namespace utk
