// utk - build and check unary sorting networks, prune them into top-k
// selectors, simulate temporal neurons built on them, and report
// gate-equivalent costs. Everything is seeded and file-driven so runs are
// reproducible byte for byte.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "utk/cost.hpp"
#include "utk/emit.hpp"
#include "utk/files.hpp"
#include "utk/kernels.hpp"
#include "utk/neuron.hpp"
#include "utk/sortnet.hpp"
#include "utk/topk.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyViolation = 1;
constexpr int kExitUsage = 2;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Collects output files for one run and pins inputs in a manifest.
struct RunDir {
    fs::path dir;
    utk::RunManifest manifest;

    explicit RunDir(const std::string& out, std::string command) {
        dir = out.empty() ? fs::path(".") : fs::path(out);
        fs::create_directories(dir);
        manifest.command = std::move(command);
    }

    void param(const std::string& key, const std::string& value) {
        manifest.params.emplace_back(key, value);
    }

    std::string read_input(const fs::path& path) {
        std::string contents = utk::read_file(path);
        manifest.inputs.emplace_back(path.generic_string(), utk::fnv1a_hex(contents));
        return contents;
    }

    void write(const std::string& name, std::string_view contents) {
        utk::write_file(dir / name, contents);
        manifest.outputs.push_back(name);
    }

    void finish() {
        utk::write_file(dir / (manifest.command + ".manifest.json"),
                        utk::manifest_to_json(manifest));
    }
};

std::vector<uint32_t> parse_uint_list(const std::string& csv) {
    std::vector<uint32_t> values;
    std::istringstream in(csv);
    std::string item;
    while (std::getline(in, item, ','))
        values.push_back(static_cast<uint32_t>(std::stoul(item)));
    return values;
}

struct GenOpts {
    uint32_t n = 8;
    std::string kind = "bitonic";
    std::string out;
};

int cmd_gen(const GenOpts& opt) {
    if (opt.kind != "bitonic")
        throw std::invalid_argument("unknown network kind '" + opt.kind +
                                    "' (supported: bitonic)");
    RunDir run(opt.out, "gen");
    run.param("n", std::to_string(opt.n));
    run.param("kind", opt.kind);
    const utk::SortingNetwork net = utk::gen_bitonic(opt.n);
    const std::string name = opt.kind + "_" + std::to_string(opt.n) + ".net";
    run.write(name, utk::serialize(net));
    run.finish();
    std::cout << opt.kind << " n=" << opt.n << ": " << net.size() << " units -> "
              << (run.dir / name).generic_string() << "\n";
    return kExitOk;
}

struct ValidateOpts {
    std::string net;
    uint64_t budget = 4096;
    uint64_t seed = 1;
    bool json = false;
};

int cmd_validate(const ValidateOpts& opt) {
    const utk::SortingNetwork net = utk::parse_network(utk::read_file(opt.net));
    const utk::ValidationReport report = utk::validate_sorter(net, opt.budget, opt.seed);
    if (opt.json) {
        std::cout << utk::validation_to_json(report);
    } else {
        std::cout << opt.net << ": n=" << net.n() << " units=" << net.size() << " "
                  << (report.passed ? "PASS" : "FAIL") << " ("
                  << (report.exhaustive ? "exhaustive, " : "structured+random, ")
                  << report.vectors_checked << " vectors)\n";
        if (report.counterexample)
            std::cout << "counterexample input: " << report.counterexample->to_string() << "\n";
    }
    return report.passed ? kExitOk : kExitPropertyViolation;
}

struct PruneOpts {
    std::string net;
    uint32_t k = 2;
    std::string out;
    bool skip_validation = false;
};

int cmd_prune(const PruneOpts& opt) {
    RunDir run(opt.out, "prune");
    run.param("net", opt.net);
    run.param("k", std::to_string(opt.k));
    utk::SortingNetwork net = utk::parse_network(run.read_input(opt.net));
    if (!opt.skip_validation && utk::validate_sorter(net).passed)
        net.mark_validated();
    const utk::TopKSelector sel = utk::prune_topk(net, opt.k);
    const utk::SelectorCounts counts = utk::selector_counts(sel);

    const std::string stem = fs::path(opt.net).stem().string();
    const std::string sel_name = stem + "_top" + std::to_string(opt.k) + ".sel";
    run.write(sel_name, utk::serialize(sel));
    run.write("counts.json", utk::counts_to_json(counts));
    run.finish();

    std::cout << "total=" << counts.total << " mandatory=" << counts.mandatory
              << " half=" << counts.half << " -> " << (run.dir / sel_name).generic_string()
              << "\n";
    if (!sel.provenance().warning.empty())
        std::cerr << "warning: " << sel.provenance().warning << "\n";
    return kExitOk;
}

struct SimulateOpts {
    std::string config;
    std::string volleys;
    uint64_t gen_volleys = 0;
    double density = 0.1;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
};

int cmd_simulate(const SimulateOpts& opt) {
    if (opt.volleys.empty() == (opt.gen_volleys == 0))
        throw std::invalid_argument("need exactly one of --volleys or --gen-volleys");
    if (opt.gen_volleys > 0 && !opt.seed_set)
        throw std::invalid_argument("--gen-volleys requires an explicit --seed");

    RunDir run(opt.out, "simulate");
    run.param("config", opt.config);
    run.read_input(opt.config);
    const utk::NeuronConfig cfg = utk::load_config_file(opt.config);
    const utk::DendriteModel dendrite = utk::DendriteModel::build(cfg);

    std::vector<utk::SpikeVolley> volleys;
    if (!opt.volleys.empty()) {
        run.param("volleys", opt.volleys);
        volleys.push_back(utk::parse_volley(run.read_input(opt.volleys), cfg.n));
    } else {
        run.param("gen-volleys", std::to_string(opt.gen_volleys));
        run.param("density", format_double(opt.density));
        run.manifest.seed = opt.seed;
        std::mt19937_64 rng(opt.seed);
        for (uint64_t v = 0; v < opt.gen_volleys; ++v)
            volleys.push_back(utk::gen_volley(rng, cfg.n, opt.density, cfg.window));
        std::string dump;
        for (const auto& volley : volleys)
            dump += utk::volley_to_json(volley);
        run.write("volleys.json", dump);
    }

    std::string results;
    if (volleys.size() == 1) {
        results = utk::sim_result_to_json(utk::simulate_neuron(cfg, dendrite, volleys[0]));
    } else {
        results = "[\n";
        for (size_t v = 0; v < volleys.size(); ++v) {
            std::string one =
                utk::sim_result_to_json(utk::simulate_neuron(cfg, dendrite, volleys[v]));
            if (!one.empty() && one.back() == '\n')
                one.pop_back();
            results += one;
            results += (v + 1 < volleys.size()) ? ",\n" : "\n";
        }
        results += "]\n";
    }
    run.write("simresult.json", results);
    run.finish();
    std::cout << volleys.size() << " volley(s) simulated -> "
              << (run.dir / "simresult.json").generic_string() << "\n";
    return kExitOk;
}

struct CompareOpts {
    std::string base = "pc-compact";
    std::string alt = "topk-pc";
    uint32_t n = 16;
    uint32_t k = 2;
    std::string net;
    std::string weights;
    uint32_t threshold = 8;
    uint32_t weight_max = 7;
    uint32_t window = 8;
    uint32_t pulse_len = 8;
    uint32_t acc_bits = 5;
    uint64_t gen_volleys = 1000;
    double density = 0.1;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string out;
};

int cmd_compare(const CompareOpts& opt) {
    if (!opt.seed_set)
        throw std::invalid_argument("--seed is required (runs must be reproducible)");
    const auto base_kind = utk::dendrite_kind_from_string(opt.base);
    const auto alt_kind = utk::dendrite_kind_from_string(opt.alt);
    if (!base_kind || !alt_kind)
        throw std::invalid_argument("unknown dendrite kind");

    RunDir run(opt.out, "compare");
    run.param("base", opt.base);
    run.param("alt", opt.alt);
    run.param("n", std::to_string(opt.n));
    run.param("k", std::to_string(opt.k));
    run.param("threshold", std::to_string(opt.threshold));
    run.param("gen-volleys", std::to_string(opt.gen_volleys));
    run.param("density", format_double(opt.density));
    run.manifest.seed = opt.seed;

    std::shared_ptr<const utk::SortingNetwork> net;
    if (!opt.net.empty()) {
        run.param("net", opt.net);
        net = std::make_shared<const utk::SortingNetwork>(
            utk::parse_network(run.read_input(opt.net), utk::NetworkOrigin::LoadedOptimal));
    }

    utk::NeuronConfig base;
    base.n = opt.n;
    base.threshold = opt.threshold;
    base.weight_max = opt.weight_max;
    base.window = opt.window;
    base.pulse_len = opt.pulse_len;
    base.acc_bits = opt.acc_bits;
    if (!opt.weights.empty()) {
        base.weights = parse_uint_list(opt.weights);
    } else {
        // Weights come from their own stream so volley draws stay aligned
        // across reruns with different counts.
        std::mt19937_64 wrng(opt.seed * 0x9E3779B97F4A7C15ull + 1);
        base.weights.resize(opt.n);
        for (auto& w : base.weights)
            w = static_cast<uint32_t>(wrng() % (opt.weight_max + 1));
    }
    utk::NeuronConfig alt = base;
    base.kind = *base_kind;
    base.k = utk::kind_uses_selector(*base_kind) ? opt.k : 0;
    base.network = utk::kind_uses_selector(*base_kind) ? net : nullptr;
    alt.kind = *alt_kind;
    alt.k = utk::kind_uses_selector(*alt_kind) ? opt.k : 0;
    alt.network = utk::kind_uses_selector(*alt_kind) ? net : nullptr;

    std::mt19937_64 rng(opt.seed);
    std::vector<utk::SpikeVolley> volleys;
    volleys.reserve(opt.gen_volleys);
    for (uint64_t v = 0; v < opt.gen_volleys; ++v)
        volleys.push_back(utk::gen_volley(rng, opt.n, opt.density, opt.window));

    const utk::EquivalenceReport report = utk::compare_designs(base, alt, volleys);
    run.write("compare.csv", utk::equivalence_to_csv(report));
    run.write("summary.json", utk::equivalence_summary_json(report));

    // Cost context for the same (n, k) point.
    std::vector<std::pair<std::string, const utk::SortingNetwork*>> sources;
    utk::SortingNetwork bitonic =
        std::has_single_bit(opt.n) ? utk::gen_bitonic(opt.n) : utk::gen_bitonic(2);
    if (std::has_single_bit(opt.n))
        sources.emplace_back("bitonic", &bitonic);
    if (net)
        sources.emplace_back(fs::path(opt.net).stem().string(), net.get());
    const auto table = utk::rank_designs(opt.n, opt.k, sources, opt.acc_bits, opt.pulse_len);
    run.write("cost.csv", utk::ranked_to_csv(table));
    run.finish();

    std::cout << "volleys=" << report.volleys << " fire_matches=" << report.fire_matches
              << " trace_matches=" << report.trace_matches
              << " sparse_volleys=" << report.sparse_volleys
              << " sparse_violations=" << report.sparse_violations << "\n";
    return kExitOk;
}

struct CostOpts {
    uint32_t n = 16;
    uint32_t k = 2;
    std::vector<std::string> nets;
    uint32_t acc_bits = 5;
    uint32_t pulse_len = 8;
    bool plot_data = false;
    std::string out;
};

int cmd_cost(const CostOpts& opt) {
    RunDir run(opt.out, "cost");
    run.param("n", std::to_string(opt.n));
    run.param("k", std::to_string(opt.k));

    std::vector<utk::SortingNetwork> loaded;
    std::vector<std::pair<std::string, const utk::SortingNetwork*>> sources;
    std::optional<utk::SortingNetwork> bitonic;
    if (std::has_single_bit(opt.n) && opt.n >= 2 && opt.n <= 64) {
        bitonic = utk::gen_bitonic(opt.n);
        sources.emplace_back("bitonic", &*bitonic);
    }
    loaded.reserve(opt.nets.size());
    for (const auto& path : opt.nets) {
        run.param("net", path);
        loaded.push_back(
            utk::parse_network(run.read_input(path), utk::NetworkOrigin::LoadedOptimal));
        sources.emplace_back(fs::path(path).stem().string(), &loaded.back());
    }

    const auto table = utk::rank_designs(opt.n, opt.k, sources, opt.acc_bits, opt.pulse_len);
    run.write("cost.csv", utk::ranked_to_csv(table));
    if (opt.plot_data)
        run.write("plot.csv", utk::ranked_to_plot_data(opt.n, opt.k, table));
    run.finish();

    for (const auto& row : table)
        std::cout << row.dendrite_ge << " GE dendrite / " << row.neuron_ge << " GE neuron  "
                  << row.design << "\n";
    return kExitOk;
}

struct EmitOpts {
    std::string kind = "selector";
    std::string net;
    uint32_t n = 0;
    uint32_t k = 0;
    std::string out;
};

int cmd_emit(const EmitOpts& opt) {
    RunDir run(opt.out, "emit");
    run.param("kind", opt.kind);

    std::optional<utk::SortingNetwork> net;
    if (!opt.net.empty()) {
        run.param("net", opt.net);
        net = utk::parse_network(run.read_input(opt.net));
        if (utk::validate_sorter(*net).passed)
            net->mark_validated();
    }

    utk::Netlist netlist;
    if (opt.kind == "sorter") {
        if (!net)
            throw std::invalid_argument("--kind sorter needs --net");
        netlist = utk::emit_sorter(*net);
    } else if (opt.kind == "selector") {
        if (!net || opt.k == 0)
            throw std::invalid_argument("--kind selector needs --net and --k");
        run.param("k", std::to_string(opt.k));
        netlist = utk::emit_selector(utk::prune_topk(*net, opt.k));
    } else if (const auto kind = utk::dendrite_kind_from_string(opt.kind)) {
        const uint32_t n = net ? net->n() : opt.n;
        if (n == 0)
            throw std::invalid_argument("--kind " + opt.kind + " needs --net or --n");
        if (utk::kind_uses_selector(*kind))
            run.param("k", std::to_string(opt.k));
        netlist = utk::emit_dendrite(*kind, n, opt.k, net ? &*net : nullptr);
    } else {
        throw std::invalid_argument("unknown emit kind '" + opt.kind + "'");
    }

    run.write("netlist.nl", netlist.to_text());
    run.finish();
    const auto counts = netlist.counts();
    std::cout << netlist.label() << ": AND2=" << counts.and2 << " OR2=" << counts.or2
              << " FA=" << counts.fa << " CONST0=" << counts.const0 << " -> "
              << (run.dir / "netlist.nl").generic_string() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"unary sorting networks, top-k selectors, and temporal neuron simulation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(utk::kToolVersion) + " (kernel " +
                                          utk::kernels::active_name() + ")");

    GenOpts gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a sorting network file");
    gen_cmd->add_option("--n", gen.n, "wire count (power of two)")->required();
    gen_cmd->add_option("--kind", gen.kind, "construction (bitonic)");
    gen_cmd->add_option("--out", gen.out, "output directory");

    ValidateOpts validate;
    auto* validate_cmd = app.add_subcommand("validate", "zero-one check a network file");
    validate_cmd->add_option("--net", validate.net, "network file")->required();
    validate_cmd->add_option("--budget", validate.budget, "random patterns for wide networks");
    validate_cmd->add_option("--seed", validate.seed, "seed for random patterns");
    validate_cmd->add_flag("--json", validate.json, "print the report as JSON");

    PruneOpts prune;
    auto* prune_cmd = app.add_subcommand("prune", "derive a top-k selector from a sorter");
    prune_cmd->add_option("--net", prune.net, "network file")->required();
    prune_cmd->add_option("--k", prune.k, "selected output count")->required();
    prune_cmd->add_option("--out", prune.out, "output directory");
    prune_cmd->add_flag("--skip-validation", prune.skip_validation,
                        "do not validate the source first");

    SimulateOpts simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "run a neuron over spike volleys");
    sim_cmd->add_option("--config", simulate.config, "neuron config JSON")->required();
    sim_cmd->add_option("--volleys", simulate.volleys, "volley file (JSON or CSV)");
    sim_cmd->add_option("--gen-volleys", simulate.gen_volleys, "number of volleys to generate");
    sim_cmd->add_option("--density", simulate.density, "per-input spike probability");
    sim_cmd->add_option("--seed", simulate.seed, "volley generator seed")
        ->each([&](const std::string&) { simulate.seed_set = true; });
    sim_cmd->add_option("--out", simulate.out, "output directory");

    CompareOpts compare;
    auto* cmp_cmd = app.add_subcommand("compare", "equivalence + cost of two dendrite kinds");
    cmp_cmd->add_option("--base", compare.base, "baseline dendrite kind");
    cmp_cmd->add_option("--alt", compare.alt, "alternative dendrite kind");
    cmp_cmd->add_option("--n", compare.n, "input count")->required();
    cmp_cmd->add_option("--k", compare.k, "selector output count");
    cmp_cmd->add_option("--net", compare.net, "selector source network file");
    cmp_cmd->add_option("--weights", compare.weights, "comma-separated weights");
    cmp_cmd->add_option("--threshold", compare.threshold, "firing threshold");
    cmp_cmd->add_option("--weight-max", compare.weight_max, "maximum weight value");
    cmp_cmd->add_option("--window", compare.window, "compute window cycles");
    cmp_cmd->add_option("--pulse", compare.pulse_len, "axon pulse cycles");
    cmp_cmd->add_option("--acc-bits", compare.acc_bits, "accumulator width");
    cmp_cmd->add_option("--gen-volleys", compare.gen_volleys, "number of volleys");
    cmp_cmd->add_option("--density", compare.density, "per-input spike probability");
    cmp_cmd->add_option("--seed", compare.seed, "volley generator seed")
        ->each([&](const std::string&) { compare.seed_set = true; });
    cmp_cmd->add_option("--out", compare.out, "output directory");

    CostOpts cost;
    auto* cost_cmd = app.add_subcommand("cost", "gate-equivalent table for all dendrite kinds");
    cost_cmd->add_option("--n", cost.n, "input count")->required();
    cost_cmd->add_option("--k", cost.k, "selector output count")->required();
    cost_cmd->add_option("--net", cost.nets, "selector source network file(s)");
    cost_cmd->add_option("--acc-bits", cost.acc_bits, "accumulator width");
    cost_cmd->add_option("--pulse", cost.pulse_len, "axon pulse cycles");
    cost_cmd->add_flag("--plot-data", cost.plot_data, "also write (n,k,design,GE) tuples");
    cost_cmd->add_option("--out", cost.out, "output directory");

    EmitOpts emit;
    auto* emit_cmd = app.add_subcommand("emit", "write a structural netlist");
    emit_cmd->add_option("--kind", emit.kind,
                         "sorter | selector | pc-compact | sorting-pc | topk-pc");
    emit_cmd->add_option("--net", emit.net, "source network file");
    emit_cmd->add_option("--n", emit.n, "input count (pc kinds without --net)");
    emit_cmd->add_option("--k", emit.k, "selector output count");
    emit_cmd->add_option("--out", emit.out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_cmd->parsed())
            return cmd_gen(gen);
        if (validate_cmd->parsed())
            return cmd_validate(validate);
        if (prune_cmd->parsed())
            return cmd_prune(prune);
        if (sim_cmd->parsed())
            return cmd_simulate(simulate);
        if (cmp_cmd->parsed())
            return cmd_compare(compare);
        if (cost_cmd->parsed())
            return cmd_cost(cost);
        if (emit_cmd->parsed())
            return cmd_emit(emit);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
