#pragma once

#include <cstdint>

namespace utk {

// One compare-and-swap unit between wires i < j: the AND (min) lands on
// wire i, the OR (max) on wire j, so ones sink toward higher indices.
struct CompareSwap {
    uint32_t i = 0;
    uint32_t j = 0;

    bool operator==(const CompareSwap&) const = default;
};

} // namespace utk
