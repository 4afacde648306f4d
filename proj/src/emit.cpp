#include "utk/emit.hpp"

#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace utk {

namespace {

std::string_view cell_name(CellType t) {
    switch (t) {
    case CellType::And2: return "AND2";
    case CellType::Or2: return "OR2";
    case CellType::Fa: return "FA";
    case CellType::Const0: return "CONST0";
    }
    return "?";
}

} // namespace

uint32_t Netlist::new_net(const std::string& name) {
    net_names_.push_back(name);
    return static_cast<uint32_t>(net_names_.size() - 1);
}

void Netlist::declare_input(uint32_t net) { inputs_.push_back(net); }

void Netlist::declare_output(uint32_t net) { outputs_.push_back(net); }

void Netlist::add_gate(CellType type, uint32_t out, uint32_t a, uint32_t b) {
    NetlistCell cell;
    cell.type = type;
    cell.out = out;
    cell.in = {a, b, 0};
    cell.nin = 2;
    cells_.push_back(cell);
}

void Netlist::add_fa(uint32_t sum, uint32_t carry, uint32_t a, uint32_t b, uint32_t cin) {
    NetlistCell cell;
    cell.type = CellType::Fa;
    cell.out = sum;
    cell.out2 = carry;
    cell.in = {a, b, cin};
    cell.nin = 3;
    cells_.push_back(cell);
}

void Netlist::add_const0(uint32_t out) {
    NetlistCell cell;
    cell.type = CellType::Const0;
    cell.out = out;
    cell.nin = 0;
    cells_.push_back(cell);
}

Netlist::Counts Netlist::counts() const {
    Counts c;
    for (const auto& cell : cells_) {
        switch (cell.type) {
        case CellType::And2: ++c.and2; break;
        case CellType::Or2: ++c.or2; break;
        case CellType::Fa: ++c.fa; break;
        case CellType::Const0: ++c.const0; break;
        }
    }
    return c;
}

std::string Netlist::to_text() const {
    std::ostringstream out;
    out << "# " << label_ << "\n";
    const Counts c = counts();
    out << "# cells AND2=" << c.and2 << " OR2=" << c.or2 << " FA=" << c.fa
        << " CONST0=" << c.const0 << "\n";
    for (uint32_t net : inputs_)
        out << "input " << net_names_[net] << "\n";
    for (size_t q = 0; q < outputs_.size(); ++q)
        out << "output y" << q << " " << net_names_[outputs_[q]] << "\n";
    for (const auto& cell : cells_) {
        out << cell_name(cell.type) << " " << net_names_[cell.out];
        if (cell.type == CellType::Fa)
            out << " " << net_names_[cell.out2];
        for (uint8_t q = 0; q < cell.nin; ++q)
            out << " " << net_names_[cell.in[q]];
        out << "\n";
    }
    return out.str();
}

Netlist Netlist::parse(std::string_view text) {
    Netlist nl;
    std::map<std::string, uint32_t> by_name;
    std::vector<char> driven; // parallel to nets

    auto lookup = [&](const std::string& name, size_t line_no) {
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw ParseError(line_no, "net '" + name + "' used before definition");
        return it->second;
    };
    auto define = [&](const std::string& name, size_t line_no, bool as_driver) {
        auto [it, fresh] = by_name.try_emplace(name, nl.net_count());
        if (fresh) {
            nl.new_net(name);
            driven.push_back(0);
        }
        if (as_driver) {
            if (driven[it->second])
                throw ParseError(line_no, "net '" + name + "' has two drivers");
            driven[it->second] = 1;
        }
        return it->second;
    };

    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    std::vector<std::string> pending_outputs;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        std::istringstream fields(line);
        std::string head;
        fields >> head;
        if (head == "input") {
            std::string name;
            if (!(fields >> name))
                throw ParseError(line_no, "input line needs a net name");
            nl.declare_input(define(name, line_no, true));
        } else if (head == "output") {
            std::string port, name;
            if (!(fields >> port >> name))
                throw ParseError(line_no, "output line needs a port and a net name");
            pending_outputs.push_back(name); // may reference a later cell
        } else if (head == "AND2" || head == "OR2") {
            std::string out, a, b, extra;
            if (!(fields >> out >> a >> b) || (fields >> extra))
                throw ParseError(line_no, head + " needs exactly out a b");
            const uint32_t na = lookup(a, line_no);
            const uint32_t nb = lookup(b, line_no);
            nl.add_gate(head == "AND2" ? CellType::And2 : CellType::Or2,
                        define(out, line_no, true), na, nb);
        } else if (head == "FA") {
            std::string sum, carry, a, b, cin, extra;
            if (!(fields >> sum >> carry >> a >> b >> cin) || (fields >> extra))
                throw ParseError(line_no, "FA needs exactly sum cout a b cin");
            const uint32_t na = lookup(a, line_no);
            const uint32_t nb = lookup(b, line_no);
            const uint32_t nc = lookup(cin, line_no);
            const uint32_t ns = define(sum, line_no, true);
            const uint32_t nco = define(carry, line_no, true);
            nl.add_fa(ns, nco, na, nb, nc);
        } else if (head == "CONST0") {
            std::string out, extra;
            if (!(fields >> out) || (fields >> extra))
                throw ParseError(line_no, "CONST0 needs exactly one net");
            nl.add_const0(define(out, line_no, true));
        } else {
            throw ParseError(line_no, "unknown line '" + head + "'");
        }
    }
    for (const auto& name : pending_outputs) {
        auto it = by_name.find(name);
        if (it == by_name.end())
            throw std::runtime_error("output references undefined net '" + name + "'");
        nl.declare_output(it->second);
    }
    return nl;
}

BitVector Netlist::interpret(const BitVector& in) const {
    if (in.width() != inputs_.size())
        throw std::invalid_argument("netlist expects " + std::to_string(inputs_.size()) +
                                    " inputs, got " + std::to_string(in.width()));
    std::vector<std::optional<bool>> value(net_names_.size());
    for (size_t q = 0; q < inputs_.size(); ++q)
        value[inputs_[q]] = in.get(static_cast<uint32_t>(q));

    auto read = [&](uint32_t net) {
        if (!value[net])
            throw std::logic_error("net '" + net_names_[net] + "' read before being driven");
        return *value[net];
    };

    for (const auto& cell : cells_) {
        switch (cell.type) {
        case CellType::And2:
            value[cell.out] = read(cell.in[0]) && read(cell.in[1]);
            break;
        case CellType::Or2:
            value[cell.out] = read(cell.in[0]) || read(cell.in[1]);
            break;
        case CellType::Fa: {
            const int sum = (read(cell.in[0]) ? 1 : 0) + (read(cell.in[1]) ? 1 : 0) +
                            (read(cell.in[2]) ? 1 : 0);
            value[cell.out] = (sum & 1) != 0;
            value[cell.out2] = sum >= 2;
            break;
        }
        case CellType::Const0:
            value[cell.out] = false;
            break;
        }
    }

    BitVector out(static_cast<uint32_t>(outputs_.size()));
    for (size_t q = 0; q < outputs_.size(); ++q)
        out.set(static_cast<uint32_t>(q), read(outputs_[q]));
    return out;
}

namespace {

struct Builder {
    Netlist nl;
    std::vector<uint32_t> cur; // current net per wire
    uint32_t seq = 0;
    uint32_t zero_net = UINT32_MAX;

    explicit Builder(uint32_t n) {
        cur.resize(n);
        for (uint32_t w = 0; w < n; ++w) {
            cur[w] = nl.new_net("x" + std::to_string(w));
            nl.declare_input(cur[w]);
        }
    }

    uint32_t fresh() { return nl.new_net("n" + std::to_string(seq++)); }

    uint32_t zero() {
        if (zero_net == UINT32_MAX) {
            zero_net = nl.new_net("zero");
            nl.add_const0(zero_net);
        }
        return zero_net;
    }

    // Compare-and-swap with optional dead side. A dead wire gets a fresh
    // CONST0 driver so its index stays valid but nothing reads it.
    void unit(uint32_t i, uint32_t j, int dead /* -1 none, 0 min, 1 max */) {
        const uint32_t a = cur[i];
        const uint32_t b = cur[j];
        if (dead != 0) {
            const uint32_t lo = fresh();
            nl.add_gate(CellType::And2, lo, a, b);
            cur[i] = lo;
        } else {
            const uint32_t dead_net = fresh();
            nl.add_const0(dead_net);
            cur[i] = dead_net;
        }
        if (dead != 1) {
            const uint32_t hi = fresh();
            nl.add_gate(CellType::Or2, hi, a, b);
            cur[j] = hi;
        } else {
            const uint32_t dead_net = fresh();
            nl.add_const0(dead_net);
            cur[j] = dead_net;
        }
    }

    // Chained-FA counter over `bits`; returns sum nets, low bit first.
    std::vector<uint32_t> counter(const std::vector<uint32_t>& bits) {
        std::vector<std::deque<uint32_t>> columns(1);
        for (uint32_t b : bits)
            columns[0].push_back(b);
        for (size_t w = 0; w < columns.size(); ++w) {
            while (columns[w].size() >= 2) {
                const uint32_t a = columns[w].front();
                columns[w].pop_front();
                const uint32_t b = columns[w].front();
                columns[w].pop_front();
                uint32_t c;
                if (!columns[w].empty()) {
                    c = columns[w].front();
                    columns[w].pop_front();
                } else {
                    c = zero();
                }
                const uint32_t sum = fresh();
                const uint32_t carry = fresh();
                nl.add_fa(sum, carry, a, b, c);
                columns[w].push_back(sum);
                if (w + 1 == columns.size())
                    columns.emplace_back();
                columns[w + 1].push_back(carry);
            }
        }
        std::vector<uint32_t> sums;
        for (const auto& col : columns)
            sums.push_back(col.front());
        return sums;
    }
};

} // namespace

Netlist emit_sorter(const SortingNetwork& net) {
    Builder b(net.n());
    for (const auto& u : net.units())
        b.unit(u.i, u.j, -1);
    for (uint32_t w = 0; w < net.n(); ++w)
        b.nl.declare_output(b.cur[w]);
    b.nl.set_label("sorter n=" + std::to_string(net.n()) + " units=" +
                   std::to_string(net.size()));
    return std::move(b.nl);
}

Netlist emit_selector(const TopKSelector& sel) {
    Builder b(sel.n());
    const auto half = sel.half();
    size_t h = 0;
    const auto mandatory = sel.mandatory();
    for (size_t p = 0; p < mandatory.size(); ++p) {
        int dead = -1;
        if (h < half.size() && half[h].pos == p) {
            dead = half[h].dead_wire == mandatory[p].i ? 0 : 1;
            ++h;
        }
        b.unit(mandatory[p].i, mandatory[p].j, dead);
    }
    for (uint32_t q = 0; q < sel.k(); ++q)
        b.nl.declare_output(b.cur[sel.output_wire(q)]);
    b.nl.set_label("top-" + std::to_string(sel.k()) + " selector n=" +
                   std::to_string(sel.n()));
    return std::move(b.nl);
}

Netlist emit_dendrite(DendriteKind kind, uint32_t n, uint32_t k, const SortingNetwork* source) {
    if (kind == DendriteKind::PcConventional)
        throw std::invalid_argument(
            "pc-conventional uses half adders, which this netlist format cannot express");
    if (kind_uses_selector(kind)) {
        if (source == nullptr)
            throw std::invalid_argument(std::string(to_string(kind)) +
                                        " needs a source network");
        if (source->n() != n)
            throw std::invalid_argument("source network width does not match n");
        if (k < 1 || k > n)
            throw std::invalid_argument("k must be in [1, n]");
    }

    Builder b(n);
    std::vector<uint32_t> counted;
    if (kind == DendriteKind::PcCompact) {
        for (uint32_t w = 0; w < n; ++w)
            counted.push_back(b.cur[w]);
    } else if (kind == DendriteKind::SortingPc) {
        for (const auto& u : source->units())
            b.unit(u.i, u.j, -1);
        for (uint32_t w = n - k; w < n; ++w)
            counted.push_back(b.cur[w]);
    } else { // TopkPc
        const TopKSelector sel = prune_topk(*source, k);
        const auto half = sel.half();
        size_t h = 0;
        const auto mandatory = sel.mandatory();
        for (size_t p = 0; p < mandatory.size(); ++p) {
            int dead = -1;
            if (h < half.size() && half[h].pos == p) {
                dead = half[h].dead_wire == mandatory[p].i ? 0 : 1;
                ++h;
            }
            b.unit(mandatory[p].i, mandatory[p].j, dead);
        }
        for (uint32_t q = 0; q < k; ++q)
            counted.push_back(b.cur[sel.output_wire(q)]);
    }

    std::vector<uint32_t> sums =
        counted.size() == 1 ? counted : b.counter(counted);
    for (uint32_t s : sums)
        b.nl.declare_output(s);
    b.nl.set_label(std::string(to_string(kind)) + " n=" + std::to_string(n) +
                   (kind_uses_selector(kind) ? " k=" + std::to_string(k) : ""));
    return std::move(b.nl);
}

} // namespace utk
