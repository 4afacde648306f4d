#include "utk/sortnet.hpp"

#include <bit>
#include <fstream>
#include <random>
#include <sstream>

#include "utk/kernels.hpp"

namespace utk {

namespace {

constexpr uint32_t kMaxWires = 4096;

void append_bitonic_merge(std::vector<CompareSwap>& units, uint32_t lo, uint32_t len) {
    if (len < 2)
        return;
    const uint32_t half = len / 2;
    for (uint32_t q = 0; q < half; ++q)
        units.push_back({lo + q, lo + q + half});
    append_bitonic_merge(units, lo, half);
    append_bitonic_merge(units, lo + half, half);
}

void append_bitonic_sort(std::vector<CompareSwap>& units, uint32_t lo, uint32_t len) {
    if (len < 2)
        return;
    const uint32_t half = len / 2;
    append_bitonic_sort(units, lo, half);
    append_bitonic_sort(units, lo + half, half);
    // Fold the two ascending halves against each other, then clean each half.
    for (uint32_t q = 0; q < half; ++q)
        units.push_back({lo + q, lo + len - 1 - q});
    append_bitonic_merge(units, lo, half);
    append_bitonic_merge(units, lo + half, half);
}

} // namespace

std::string_view to_string(NetworkOrigin origin) {
    switch (origin) {
    case NetworkOrigin::BitonicGenerated: return "bitonic-generated";
    case NetworkOrigin::LoadedOptimal: return "loaded-optimal";
    case NetworkOrigin::LoadedCustom: return "loaded-custom";
    }
    return "unknown";
}

SortingNetwork::SortingNetwork(uint32_t n, std::vector<CompareSwap> units, NetworkOrigin origin)
    : n_(n), units_(std::move(units)), origin_(origin) {
    if (n_ < 2 || n_ > kMaxWires)
        throw std::invalid_argument("network width must be in [2, " +
                                    std::to_string(kMaxWires) + "]");
    for (const auto& u : units_) {
        if (u.i >= u.j)
            throw std::invalid_argument("unit wires must satisfy i < j");
        if (u.j >= n_)
            throw std::invalid_argument("unit wire index exceeds network width");
    }
}

SortingNetwork gen_bitonic(uint32_t n) {
    if (n < 2 || n > 64 || !std::has_single_bit(n))
        throw std::invalid_argument("bitonic width must be a power of two in [2, 64], got " +
                                    std::to_string(n));
    std::vector<CompareSwap> units;
    append_bitonic_sort(units, 0, n);
    SortingNetwork net(n, std::move(units), NetworkOrigin::BitonicGenerated);
    net.mark_validated(); // construction is a sorter by Batcher's argument
    return net;
}

SortingNetwork parse_network(std::string_view text, NetworkOrigin origin) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    bool have_header = false;
    uint32_t n = 0;
    std::vector<CompareSwap> units;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        if (!have_header) {
            std::string key;
            unsigned long width = 0;
            std::string extra;
            if (!(fields >> key >> width) || key != "n" || (fields >> extra))
                throw ParseError(line_no, "expected header 'n <width>'");
            if (width < 2 || width > kMaxWires)
                throw ParseError(line_no, "width out of range [2, " +
                                              std::to_string(kMaxWires) + "]");
            n = static_cast<uint32_t>(width);
            have_header = true;
            continue;
        }
        long long i = -1, j = -1;
        std::string extra;
        if (!(fields >> i >> j) || (fields >> extra))
            throw ParseError(line_no, "expected unit line '<i> <j>'");
        if (i < 0 || j < 0 || i >= j)
            throw ParseError(line_no, "unit wires must satisfy 0 <= i < j");
        if (j >= n)
            throw ParseError(line_no, "wire index " + std::to_string(j) +
                                          " exceeds width " + std::to_string(n));
        units.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
    }
    if (!have_header)
        throw ParseError(line_no, "missing header 'n <width>'");
    if (units.empty())
        throw ParseError(line_no, "network has no units");
    return SortingNetwork(n, std::move(units), origin);
}

SortingNetwork load_network_file(const std::filesystem::path& path, NetworkOrigin origin) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open network file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str(), origin);
}

std::string serialize(const SortingNetwork& net) {
    std::string out = "n " + std::to_string(net.n()) + "\n";
    for (const auto& u : net.units()) {
        out += std::to_string(u.i);
        out += ' ';
        out += std::to_string(u.j);
        out += '\n';
    }
    return out;
}

BitVector eval_bits(const SortingNetwork& net, const BitVector& in) {
    if (in.width() != net.n())
        throw std::invalid_argument("input width " + std::to_string(in.width()) +
                                    " does not match network width " + std::to_string(net.n()));
    BitVector out = in;
    for (const auto& u : net.units()) {
        const bool a = out.get(u.i);
        const bool b = out.get(u.j);
        out.set(u.i, a && b);
        out.set(u.j, a || b);
    }
    return out;
}

TemporalStream eval_temporal(const SortingNetwork& net, const TemporalStream& in) {
    if (in.wires() != net.n())
        throw std::invalid_argument("stream has " + std::to_string(in.wires()) +
                                    " wires, network expects " + std::to_string(net.n()));
    TemporalStream out = in;
    kernels::eval(net.units().data(), net.size(), out.data(), out.stride());
    return out;
}

namespace {

// Bit b of the row-w fill word holds bit w of lane value (base + b), with
// base 64-aligned. Wires below 6 follow fixed periodic patterns.
uint64_t fill_word(uint32_t wire, uint64_t base) {
    static constexpr uint64_t kPattern[6] = {
        0xAAAAAAAAAAAAAAAAull, 0xCCCCCCCCCCCCCCCCull, 0xF0F0F0F0F0F0F0F0ull,
        0xFF00FF00FF00FF00ull, 0xFFFF0000FFFF0000ull, 0xFFFFFFFF00000000ull,
    };
    if (wire < 6)
        return kPattern[wire];
    return ((base >> wire) & 1) ? ~uint64_t{0} : uint64_t{0};
}

struct BatchResult {
    bool ok = true;
    uint64_t bad_lane = 0; // lane index within the batch
};

// Runs the network over `lanes` packed evaluation lanes and reports the
// first lane whose output is not of the form 0...01...1. A vertical parity
// check guards against evaluation corruption.
BatchResult run_batch(const SortingNetwork& net, std::vector<uint64_t>& slices, size_t words,
                      uint64_t lanes) {
    const uint32_t n = net.n();
    std::vector<uint64_t> parity(words, 0);
    for (uint32_t w = 0; w < n; ++w)
        for (size_t q = 0; q < words; ++q)
            parity[q] ^= slices[w * words + q];

    kernels::eval(net.units().data(), net.size(), slices.data(), words);

    for (uint32_t w = 0; w < n; ++w)
        for (size_t q = 0; q < words; ++q)
            parity[q] ^= slices[w * words + q];

    for (size_t q = 0; q < words; ++q) {
        uint64_t bad = parity[q];
        for (uint32_t w = 0; w + 1 < n; ++w)
            bad |= slices[w * words + q] & ~slices[(w + 1) * words + q];
        if (q + 1 == words && lanes % 64 != 0)
            bad &= (uint64_t{1} << (lanes % 64)) - 1;
        if (bad != 0)
            return {false, q * 64 + static_cast<uint64_t>(std::countr_zero(bad))};
    }
    return {true, 0};
}

} // namespace

ValidationReport validate_sorter(const SortingNetwork& net, uint64_t random_budget,
                                 uint64_t seed) {
    const uint32_t n = net.n();
    ValidationReport report;

    if (n <= 20) {
        report.exhaustive = true;
        const uint64_t total = uint64_t{1} << n;
        const uint64_t block = std::min<uint64_t>(total, 65536);
        const size_t words = static_cast<size_t>(block / 64 + (block % 64 ? 1 : 0));
        std::vector<uint64_t> slices(static_cast<size_t>(n) * words);
        for (uint64_t base = 0; base < total; base += block) {
            const uint64_t lanes = std::min(block, total - base);
            for (uint32_t w = 0; w < n; ++w)
                for (size_t q = 0; q < words; ++q)
                    slices[w * words + q] = fill_word(w, base + q * 64);
            BatchResult r = run_batch(net, slices, words, lanes);
            report.vectors_checked += lanes;
            if (!r.ok) {
                report.passed = false;
                report.counterexample = BitVector::from_uint(base + r.bad_lane, n);
                return report;
            }
        }
        report.passed = true;
        return report;
    }

    // Structured patterns plus a random budget for wide networks.
    std::vector<BitVector> patterns;
    patterns.push_back(BitVector(n));
    {
        BitVector ones(n);
        for (uint32_t w = 0; w < n; ++w)
            ones.set(w, true);
        patterns.push_back(ones);
    }
    for (uint32_t w = 0; w < n; ++w) {
        BitVector one(n);
        one.set(w, true);
        patterns.push_back(one);
        BitVector zero = patterns[1];
        zero.set(w, false);
        patterns.push_back(zero);
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint64_t> word_dist;
    for (uint64_t r = 0; r < random_budget; ++r) {
        BitVector v(n);
        for (uint32_t w = 0; w < n; ++w)
            v.set(w, (word_dist(rng) & 1) != 0);
        patterns.push_back(std::move(v));
    }

    const uint64_t block = 16384;
    const size_t words = block / 64;
    std::vector<uint64_t> slices(static_cast<size_t>(n) * words);
    for (size_t base = 0; base < patterns.size(); base += block) {
        const uint64_t lanes = std::min<uint64_t>(block, patterns.size() - base);
        std::fill(slices.begin(), slices.end(), 0);
        for (uint64_t l = 0; l < lanes; ++l) {
            const BitVector& v = patterns[base + l];
            for (uint32_t w = 0; w < n; ++w)
                if (v.get(w))
                    slices[w * words + l / 64] |= uint64_t{1} << (l % 64);
        }
        BatchResult r = run_batch(net, slices, words, lanes);
        report.vectors_checked += lanes;
        if (!r.ok) {
            report.passed = false;
            report.counterexample = patterns[base + r.bad_lane];
            return report;
        }
    }
    report.passed = true;
    return report;
}

} // namespace utk
