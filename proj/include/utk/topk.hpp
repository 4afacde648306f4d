#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "utk/bitvec.hpp"
#include "utk/sortnet.hpp"

namespace utk {

// Marks a mandatory unit whose output on `dead_wire` feeds nothing
// downstream, so the gate driving that wire can be dropped.
struct HalfUnit {
    uint32_t pos = 0;       // index into the mandatory unit list
    uint32_t dead_wire = 0; // one of the unit's two wires

    bool operator==(const HalfUnit&) const = default;
};

struct SelectorProvenance {
    NetworkOrigin source_origin = NetworkOrigin::LoadedCustom;
    bool source_validated = false;
    std::string warning; // set when the source was not validated
};

// A sorting network pruned down to the units that can still influence the
// bottom k wires. Dead half-unit wires are modeled as constant-0 nets so
// wire indices stay stable.
class TopKSelector {
public:
    TopKSelector(uint32_t n, uint32_t k, uint32_t source_units,
                 std::vector<CompareSwap> mandatory, std::vector<HalfUnit> half,
                 SelectorProvenance provenance = {});

    uint32_t n() const { return n_; }
    uint32_t k() const { return k_; }
    uint32_t source_units() const { return source_units_; }
    std::span<const CompareSwap> mandatory() const { return mandatory_; }
    std::span<const HalfUnit> half() const { return half_; }
    const SelectorProvenance& provenance() const { return provenance_; }

    // Output wires are n-k .. n-1, reported in ascending wire order.
    uint32_t output_wire(uint32_t q) const { return n_ - k_ + q; }

private:
    uint32_t n_;
    uint32_t k_;
    uint32_t source_units_;
    std::vector<CompareSwap> mandatory_;
    std::vector<HalfUnit> half_;
    SelectorProvenance provenance_;
};

// Backward liveness pass seeded with the bottom k wires, then a forward
// scan over the kept units (with the k output wires treated as consumed)
// to find half units. 1 <= k <= n.
TopKSelector prune_topk(const SortingNetwork& net, uint32_t k);

struct SelectorCounts {
    uint32_t total = 0;     // units in the source network
    uint32_t mandatory = 0; // units kept
    uint32_t half = 0;      // kept units with one dead output

    bool operator==(const SelectorCounts&) const = default;
};

SelectorCounts selector_counts(const TopKSelector& sel);

// Bottom-k view of the sort: returns a width-k vector, ascending wire order.
BitVector eval_topk(const TopKSelector& sel, const BitVector& in);
TemporalStream eval_topk_temporal(const TopKSelector& sel, const TemporalStream& in);

// Evaluation with every dead wire forced to `forced` right after its unit
// runs; with `forced` = false this is exactly eval_topk. Outputs must not
// depend on the choice, which is what the half-unit safety check asserts.
BitVector eval_topk_forced(const TopKSelector& sel, const BitVector& in, bool forced);

// Selector file format: network format plus "k <count>" and
// "total <count>" header lines; half units carry an "H:<wire>" suffix.
std::string serialize(const TopKSelector& sel);
TopKSelector parse_selector(std::string_view text);

} // namespace utk
