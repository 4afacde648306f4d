#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace utk {

// One bit per wire. Wire 0 is the top wire; string form reads wire 0 first.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(uint32_t width);

    // "10110100" -> wire 0 = 1, wire 1 = 0, ...
    static BitVector from_string(std::string_view s);
    // bit w of value -> wire w (used when enumerating all 2^n patterns)
    static BitVector from_uint(uint64_t value, uint32_t width);

    uint32_t width() const { return width_; }
    bool get(uint32_t wire) const;
    void set(uint32_t wire, bool value);
    uint32_t popcount() const;
    uint64_t to_uint() const; // width must be <= 64
    std::string to_string() const;

    std::span<const uint64_t> words() const { return words_; }

    bool operator==(const BitVector&) const = default;

private:
    uint32_t width_ = 0;
    std::vector<uint64_t> words_;
};

// n wires of L cycles each, stored wire-major with the cycle axis packed
// 64 cycles per word (cycle c -> word c/64, bit c%64). This is exactly the
// layout the evaluation kernels run on, so a stream doubles as a batch of
// per-cycle bit vectors. Bits past the last cycle are kept zero.
class TemporalStream {
public:
    TemporalStream() = default;
    TemporalStream(uint32_t wires, uint32_t cycles);

    // One string per wire, cycle 0 first: {"00001111", "00111111"}.
    static TemporalStream from_strings(std::span<const std::string_view> rows);
    // Leading-0 monotone encoding: value v = v trailing ones (rising edge at L-v).
    static TemporalStream monotone(std::span<const uint32_t> values, uint32_t cycles);

    uint32_t wires() const { return wires_; }
    uint32_t cycles() const { return cycles_; }
    size_t stride() const { return stride_; }

    bool get(uint32_t wire, uint32_t cycle) const;
    void set(uint32_t wire, uint32_t cycle, bool value);

    uint64_t* row(uint32_t wire) { return words_.data() + static_cast<size_t>(wire) * stride_; }
    const uint64_t* row(uint32_t wire) const {
        return words_.data() + static_cast<size_t>(wire) * stride_;
    }
    uint64_t* data() { return words_.data(); }

    uint32_t ones(uint32_t wire) const;          // value of a monotone stream
    uint32_t popcount_at(uint32_t cycle) const;  // active wires in one cycle
    BitVector slice(uint32_t cycle) const;
    void clear_wire(uint32_t wire);

    std::string to_string(uint32_t wire) const;

    bool operator==(const TemporalStream&) const = default;

private:
    uint32_t wires_ = 0;
    uint32_t cycles_ = 0;
    size_t stride_ = 0;
    std::vector<uint64_t> words_;
};

} // namespace utk
