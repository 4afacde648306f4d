#include "utk/topk.hpp"

#include <algorithm>
#include <sstream>

#include "utk/kernels.hpp"

namespace utk {

TopKSelector::TopKSelector(uint32_t n, uint32_t k, uint32_t source_units,
                           std::vector<CompareSwap> mandatory, std::vector<HalfUnit> half,
                           SelectorProvenance provenance)
    : n_(n), k_(k), source_units_(source_units), mandatory_(std::move(mandatory)),
      half_(std::move(half)), provenance_(std::move(provenance)) {
    if (n_ < 2)
        throw std::invalid_argument("selector needs at least 2 wires");
    if (k_ < 1 || k_ > n_)
        throw std::invalid_argument("k must be in [1, n]");
    if (source_units_ < mandatory_.size())
        throw std::invalid_argument("source unit count below mandatory count");
    for (const auto& u : mandatory_) {
        if (u.i >= u.j || u.j >= n_)
            throw std::invalid_argument("selector unit wires out of range");
    }
    // Dead wires must be structurally dead: not an output and never read by
    // a later unit.
    std::vector<char> seen_pos(mandatory_.size(), 0);
    for (const auto& h : half_) {
        if (h.pos >= mandatory_.size())
            throw std::invalid_argument("half unit position out of range");
        if (seen_pos[h.pos])
            throw std::invalid_argument("unit marked half more than once");
        seen_pos[h.pos] = 1;
        const CompareSwap& u = mandatory_[h.pos];
        if (h.dead_wire != u.i && h.dead_wire != u.j)
            throw std::invalid_argument("half unit references a foreign wire");
        if (h.dead_wire >= n_ - k_)
            throw std::invalid_argument("half unit would kill an output wire");
        for (size_t p = h.pos + 1; p < mandatory_.size(); ++p)
            if (mandatory_[p].i == h.dead_wire || mandatory_[p].j == h.dead_wire)
                throw std::invalid_argument("dead wire is read by a later unit");
    }
}

TopKSelector prune_topk(const SortingNetwork& net, uint32_t k) {
    const uint32_t n = net.n();
    if (k < 1 || k > n)
        throw std::invalid_argument("k must be in [1, n], got " + std::to_string(k));

    // Backward pass: a unit stays iff it can reach a live wire; keeping it
    // makes its other wire live too.
    std::vector<char> live(n, 0);
    for (uint32_t w = n - k; w < n; ++w)
        live[w] = 1;
    const auto units = net.units();
    std::vector<CompareSwap> mandatory;
    mandatory.reserve(units.size());
    for (size_t p = units.size(); p-- > 0;) {
        const CompareSwap& u = units[p];
        if (live[u.i] || live[u.j]) {
            mandatory.push_back(u);
            live[u.i] = 1;
            live[u.j] = 1;
        }
    }
    std::reverse(mandatory.begin(), mandatory.end());

    // Forward pass, walked from the back: a kept unit is half on a wire
    // nothing after it reads. The k output wires count as consumed (the
    // sentinel consumers), including wire n-1 when k == 1.
    std::vector<char> consumed(n, 0);
    for (uint32_t w = n - k; w < n; ++w)
        consumed[w] = 1;
    std::vector<HalfUnit> half;
    for (size_t p = mandatory.size(); p-- > 0;) {
        const CompareSwap& u = mandatory[p];
        const bool dead_i = !consumed[u.i];
        const bool dead_j = !consumed[u.j];
        if (dead_i && dead_j)
            throw std::logic_error("kept unit with both outputs dead");
        if (dead_i)
            half.push_back({static_cast<uint32_t>(p), u.i});
        else if (dead_j)
            half.push_back({static_cast<uint32_t>(p), u.j});
        consumed[u.i] = 1;
        consumed[u.j] = 1;
    }
    std::reverse(half.begin(), half.end());

    SelectorProvenance prov;
    prov.source_origin = net.origin();
    prov.source_validated = net.validated();
    if (!net.validated())
        prov.warning = "source network was not validated; bottom-k semantics assume a sorter";

    return TopKSelector(n, k, static_cast<uint32_t>(units.size()), std::move(mandatory),
                        std::move(half), std::move(prov));
}

SelectorCounts selector_counts(const TopKSelector& sel) {
    return {sel.source_units(), static_cast<uint32_t>(sel.mandatory().size()),
            static_cast<uint32_t>(sel.half().size())};
}

BitVector eval_topk_forced(const TopKSelector& sel, const BitVector& in, bool forced) {
    if (in.width() != sel.n())
        throw std::invalid_argument("input width " + std::to_string(in.width()) +
                                    " does not match selector width " + std::to_string(sel.n()));
    BitVector state = in;
    const auto half = sel.half();
    size_t h = 0;
    const auto mandatory = sel.mandatory();
    for (size_t p = 0; p < mandatory.size(); ++p) {
        const CompareSwap& u = mandatory[p];
        const bool a = state.get(u.i);
        const bool b = state.get(u.j);
        state.set(u.i, a && b);
        state.set(u.j, a || b);
        while (h < half.size() && half[h].pos == p) {
            state.set(half[h].dead_wire, forced);
            ++h;
        }
    }
    BitVector out(sel.k());
    for (uint32_t q = 0; q < sel.k(); ++q)
        out.set(q, state.get(sel.output_wire(q)));
    return out;
}

BitVector eval_topk(const TopKSelector& sel, const BitVector& in) {
    return eval_topk_forced(sel, in, false);
}

TemporalStream eval_topk_temporal(const TopKSelector& sel, const TemporalStream& in) {
    if (in.wires() != sel.n())
        throw std::invalid_argument("stream has " + std::to_string(in.wires()) +
                                    " wires, selector expects " + std::to_string(sel.n()));
    TemporalStream scratch = in;
    kernels::eval(sel.mandatory().data(), sel.mandatory().size(), scratch.data(),
                  scratch.stride());
    TemporalStream out(sel.k(), in.cycles());
    for (uint32_t q = 0; q < sel.k(); ++q)
        std::copy_n(scratch.row(sel.output_wire(q)), scratch.stride(), out.row(q));
    return out;
}

std::string serialize(const TopKSelector& sel) {
    std::string out = "n " + std::to_string(sel.n()) + "\n";
    out += "k " + std::to_string(sel.k()) + "\n";
    out += "total " + std::to_string(sel.source_units()) + "\n";
    const auto half = sel.half();
    size_t h = 0;
    const auto mandatory = sel.mandatory();
    for (size_t p = 0; p < mandatory.size(); ++p) {
        out += std::to_string(mandatory[p].i);
        out += ' ';
        out += std::to_string(mandatory[p].j);
        if (h < half.size() && half[h].pos == p) {
            out += " H:" + std::to_string(half[h].dead_wire);
            ++h;
        }
        out += '\n';
    }
    return out;
}

TopKSelector parse_selector(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    int header = 0; // how many of n/k/total seen
    uint32_t n = 0, k = 0, total = 0;
    std::vector<CompareSwap> mandatory;
    std::vector<HalfUnit> half;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        if (header < 3) {
            static constexpr std::string_view keys[3] = {"n", "k", "total"};
            std::string key;
            unsigned long value = 0;
            std::string extra;
            if (!(fields >> key >> value) || key != keys[header] || (fields >> extra))
                throw ParseError(line_no, "expected header '" + std::string(keys[header]) +
                                              " <count>'");
            if (header == 0)
                n = static_cast<uint32_t>(value);
            else if (header == 1)
                k = static_cast<uint32_t>(value);
            else
                total = static_cast<uint32_t>(value);
            ++header;
            continue;
        }
        long long i = -1, j = -1;
        if (!(fields >> i >> j))
            throw ParseError(line_no, "expected unit line '<i> <j> [H:<wire>]'");
        if (i < 0 || j < 0 || i >= j || j >= n)
            throw ParseError(line_no, "unit wires must satisfy 0 <= i < j < n");
        std::string tag;
        if (fields >> tag) {
            if (tag.rfind("H:", 0) != 0)
                throw ParseError(line_no, "unexpected trailing token '" + tag + "'");
            unsigned long dead = 0;
            try {
                dead = std::stoul(tag.substr(2));
            } catch (const std::exception&) {
                throw ParseError(line_no, "bad half-unit wire in '" + tag + "'");
            }
            half.push_back({static_cast<uint32_t>(mandatory.size()), static_cast<uint32_t>(dead)});
            std::string extra;
            if (fields >> extra)
                throw ParseError(line_no, "unexpected trailing token '" + extra + "'");
        }
        mandatory.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
    }
    if (header < 3)
        throw ParseError(line_no, "missing selector header lines");
    if (mandatory.empty())
        throw ParseError(line_no, "selector has no units");
    try {
        return TopKSelector(n, k, total, std::move(mandatory), std::move(half));
    } catch (const std::invalid_argument& e) {
        throw ParseError(line_no, e.what());
    }
}

} // namespace utk
