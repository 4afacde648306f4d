#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "utk/bitvec.hpp"
#include "utk/compare_swap.hpp"

namespace utk {

enum class NetworkOrigin { BitonicGenerated, LoadedOptimal, LoadedCustom };

std::string_view to_string(NetworkOrigin origin);

struct ParseError : std::runtime_error {
    ParseError(size_t line_no, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    size_t line;
};

// A comparator network: n wires, units applied left to right. Immutable
// after construction apart from the validation mark.
class SortingNetwork {
public:
    SortingNetwork(uint32_t n, std::vector<CompareSwap> units, NetworkOrigin origin);

    uint32_t n() const { return n_; }
    std::span<const CompareSwap> units() const { return units_; }
    size_t size() const { return units_.size(); }
    NetworkOrigin origin() const { return origin_; }

    bool validated() const { return validated_; }
    void mark_validated() { validated_ = true; }

private:
    uint32_t n_;
    std::vector<CompareSwap> units_;
    NetworkOrigin origin_;
    bool validated_ = false;
};

// Recursive bitonic construction with every unit in standard orientation
// (min up, max down). n must be a power of two in [2, 64]; the unit count
// is (n/2) * L*(L+1)/2 for L = log2(n).
SortingNetwork gen_bitonic(uint32_t n);

// Text format: '#' comments, then "n <width>", then one "<i> <j>" per unit,
// execution order = file order.
SortingNetwork parse_network(std::string_view text,
                             NetworkOrigin origin = NetworkOrigin::LoadedCustom);
SortingNetwork load_network_file(const std::filesystem::path& path,
                                 NetworkOrigin origin = NetworkOrigin::LoadedCustom);
std::string serialize(const SortingNetwork& net); // byte-stable

// Single-pattern evaluation; popcount is conserved for any unit list.
BitVector eval_bits(const SortingNetwork& net, const BitVector& in);

// Cycle-parallel evaluation over a whole stream (the kernels' batch path).
TemporalStream eval_temporal(const SortingNetwork& net, const TemporalStream& in);

struct ValidationReport {
    bool passed = false;
    bool exhaustive = false;
    uint64_t vectors_checked = 0;
    std::optional<BitVector> counterexample;
};

// Zero-one check. Exhaustive (all 2^n patterns) for n <= 20; beyond that,
// every single-one and single-zero pattern, the two constants, and
// `random_budget` seeded random patterns.
ValidationReport validate_sorter(const SortingNetwork& net, uint64_t random_budget = 4096,
                                 uint64_t seed = 1);

} // namespace utk
