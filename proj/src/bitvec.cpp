#include "utk/bitvec.hpp"

#include <bit>
#include <stdexcept>

namespace utk {

namespace {
constexpr size_t words_for(uint32_t bits) { return (static_cast<size_t>(bits) + 63) / 64; }
} // namespace

BitVector::BitVector(uint32_t width) : width_(width), words_(words_for(width), 0) {}

BitVector BitVector::from_string(std::string_view s) {
    BitVector v(static_cast<uint32_t>(s.size()));
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') {
            v.set(static_cast<uint32_t>(i), true);
        } else if (s[i] != '0') {
            throw std::invalid_argument("bit string must contain only 0/1");
        }
    }
    return v;
}

BitVector BitVector::from_uint(uint64_t value, uint32_t width) {
    if (width > 64)
        throw std::invalid_argument("from_uint supports at most 64 wires");
    BitVector v(width);
    if (width > 0)
        v.words_[0] = width == 64 ? value : (value & ((uint64_t{1} << width) - 1));
    return v;
}

bool BitVector::get(uint32_t wire) const {
    if (wire >= width_)
        throw std::out_of_range("wire index out of range");
    return (words_[wire / 64] >> (wire % 64)) & 1;
}

void BitVector::set(uint32_t wire, bool value) {
    if (wire >= width_)
        throw std::out_of_range("wire index out of range");
    uint64_t mask = uint64_t{1} << (wire % 64);
    if (value)
        words_[wire / 64] |= mask;
    else
        words_[wire / 64] &= ~mask;
}

uint32_t BitVector::popcount() const {
    uint32_t total = 0;
    for (uint64_t w : words_)
        total += static_cast<uint32_t>(std::popcount(w));
    return total;
}

uint64_t BitVector::to_uint() const {
    if (width_ > 64)
        throw std::logic_error("to_uint requires width <= 64");
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::to_string() const {
    std::string s(width_, '0');
    for (uint32_t w = 0; w < width_; ++w)
        if (get(w))
            s[w] = '1';
    return s;
}

TemporalStream::TemporalStream(uint32_t wires, uint32_t cycles)
    : wires_(wires), cycles_(cycles), stride_(words_for(cycles)),
      words_(static_cast<size_t>(wires) * words_for(cycles), 0) {}

TemporalStream TemporalStream::from_strings(std::span<const std::string_view> rows) {
    if (rows.empty())
        return {};
    const size_t cycles = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != cycles)
            throw std::invalid_argument("all wires must have the same cycle count");
    TemporalStream t(static_cast<uint32_t>(rows.size()), static_cast<uint32_t>(cycles));
    for (uint32_t w = 0; w < t.wires_; ++w)
        for (uint32_t c = 0; c < t.cycles_; ++c) {
            if (rows[w][c] == '1')
                t.set(w, c, true);
            else if (rows[w][c] != '0')
                throw std::invalid_argument("bit string must contain only 0/1");
        }
    return t;
}

TemporalStream TemporalStream::monotone(std::span<const uint32_t> values, uint32_t cycles) {
    TemporalStream t(static_cast<uint32_t>(values.size()), cycles);
    for (uint32_t w = 0; w < t.wires_; ++w) {
        if (values[w] > cycles)
            throw std::invalid_argument("monotone value exceeds cycle count");
        for (uint32_t c = cycles - values[w]; c < cycles; ++c)
            t.set(w, c, true);
    }
    return t;
}

bool TemporalStream::get(uint32_t wire, uint32_t cycle) const {
    if (wire >= wires_ || cycle >= cycles_)
        throw std::out_of_range("stream index out of range");
    return (row(wire)[cycle / 64] >> (cycle % 64)) & 1;
}

void TemporalStream::set(uint32_t wire, uint32_t cycle, bool value) {
    if (wire >= wires_ || cycle >= cycles_)
        throw std::out_of_range("stream index out of range");
    uint64_t mask = uint64_t{1} << (cycle % 64);
    if (value)
        row(wire)[cycle / 64] |= mask;
    else
        row(wire)[cycle / 64] &= ~mask;
}

uint32_t TemporalStream::ones(uint32_t wire) const {
    if (wire >= wires_)
        throw std::out_of_range("wire index out of range");
    uint32_t total = 0;
    for (size_t q = 0; q < stride_; ++q)
        total += static_cast<uint32_t>(std::popcount(row(wire)[q]));
    return total;
}

uint32_t TemporalStream::popcount_at(uint32_t cycle) const {
    uint32_t total = 0;
    for (uint32_t w = 0; w < wires_; ++w)
        total += get(w, cycle) ? 1 : 0;
    return total;
}

BitVector TemporalStream::slice(uint32_t cycle) const {
    BitVector v(wires_);
    for (uint32_t w = 0; w < wires_; ++w)
        v.set(w, get(w, cycle));
    return v;
}

void TemporalStream::clear_wire(uint32_t wire) {
    if (wire >= wires_)
        throw std::out_of_range("wire index out of range");
    uint64_t* r = row(wire);
    for (size_t q = 0; q < stride_; ++q)
        r[q] = 0;
}

std::string TemporalStream::to_string(uint32_t wire) const {
    std::string s(cycles_, '0');
    for (uint32_t c = 0; c < cycles_; ++c)
        if (get(wire, c))
            s[c] = '1';
    return s;
}

} // namespace utk
