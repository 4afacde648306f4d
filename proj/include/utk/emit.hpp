#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "utk/bitvec.hpp"
#include "utk/neuron.hpp"
#include "utk/sortnet.hpp"
#include "utk/topk.hpp"

namespace utk {

enum class CellType { And2, Or2, Fa, Const0 };

struct NetlistCell {
    CellType type = CellType::And2;
    uint32_t out = 0;  // sum output for FA
    uint32_t out2 = 0; // FA carry output
    std::array<uint32_t, 3> in{};
    uint8_t nin = 0;
};

// Flat structural netlist. Text form, one cell per line:
//   AND2 <out> <a> <b>
//   OR2 <out> <a> <b>
//   FA <sum> <cout> <a> <b> <cin>
//   CONST0 <out>
// preceded by `input x<i>` and `output y<q> <net>` declarations. Cells are
// listed in topological order and every net has exactly one driver.
class Netlist {
public:
    const std::string& label() const { return label_; }
    uint32_t net_count() const { return static_cast<uint32_t>(net_names_.size()); }
    const std::vector<uint32_t>& inputs() const { return inputs_; }
    const std::vector<uint32_t>& outputs() const { return outputs_; }
    const std::vector<NetlistCell>& cells() const { return cells_; }
    const std::string& net_name(uint32_t id) const { return net_names_[id]; }

    struct Counts {
        uint64_t and2 = 0;
        uint64_t or2 = 0;
        uint64_t fa = 0;
        uint64_t const0 = 0;

        bool operator==(const Counts&) const = default;
    };
    Counts counts() const;

    std::string to_text() const; // byte-stable
    static Netlist parse(std::string_view text);

    // Generic gate-level evaluation, independent of the network evaluators.
    BitVector interpret(const BitVector& in) const;

    // Builder surface used by the emitters.
    void set_label(std::string label) { label_ = std::move(label); }
    uint32_t new_net(const std::string& name);
    void declare_input(uint32_t net);
    void declare_output(uint32_t net);
    void add_gate(CellType type, uint32_t out, uint32_t a, uint32_t b);
    void add_fa(uint32_t sum, uint32_t carry, uint32_t a, uint32_t b, uint32_t cin);
    void add_const0(uint32_t out);

private:
    std::string label_;
    std::vector<std::string> net_names_;
    std::vector<uint32_t> inputs_;
    std::vector<uint32_t> outputs_;
    std::vector<NetlistCell> cells_;
};

Netlist emit_sorter(const SortingNetwork& net);
Netlist emit_selector(const TopKSelector& sel);

// Dendrite netlists end in parallel-counter sum bits (low bit first).
// pc-conventional is rejected: its half adders have no cell type here.
Netlist emit_dendrite(DendriteKind kind, uint32_t n, uint32_t k, const SortingNetwork* source);

} // namespace utk
