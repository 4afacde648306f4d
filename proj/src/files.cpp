#include "utk/files.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace utk {

using ordered_json = nlohmann::ordered_json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write file: " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out)
        throw std::runtime_error("write failed for: " + path.string());
}

std::string fnv1a_hex(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

void place_spike(SpikeVolley& volley, uint64_t input, uint64_t t, uint32_t n) {
    if (input >= n)
        throw std::runtime_error("volley input " + std::to_string(input) +
                                 " out of range for n=" + std::to_string(n));
    if (volley.spikes[input])
        throw std::runtime_error("volley lists input " + std::to_string(input) + " twice");
    volley.spikes[input] = static_cast<uint32_t>(t);
}

SpikeVolley parse_volley_json(std::string_view text, uint32_t n) {
    SpikeVolley volley;
    volley.spikes.resize(n);
    ordered_json doc = ordered_json::parse(text);
    if (!doc.is_array())
        throw std::runtime_error("volley JSON must be an array of {input, t} objects");
    for (const auto& entry : doc) {
        if (!entry.is_object() || !entry.contains("input") || !entry.contains("t"))
            throw std::runtime_error("volley entries need 'input' and 't' fields");
        place_spike(volley, entry.at("input").get<uint64_t>(), entry.at("t").get<uint64_t>(), n);
    }
    return volley;
}

SpikeVolley parse_volley_csv(std::string_view text, uint32_t n) {
    SpikeVolley volley;
    volley.spikes.resize(n);
    std::istringstream in{std::string(text)};
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        unsigned long long input = 0, t = 0;
        char comma = 0;
        std::istringstream fields(line);
        if (!(fields >> input >> comma >> t) || comma != ',')
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected 'input,t'");
        place_spike(volley, input, t, n);
    }
    return volley;
}

} // namespace

SpikeVolley parse_volley(std::string_view text, uint32_t n) {
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '[')
        return parse_volley_json(text, n);
    return parse_volley_csv(text, n);
}

SpikeVolley load_volley_file(const std::filesystem::path& path, uint32_t n) {
    return parse_volley(read_file(path), n);
}

std::string volley_to_json(const SpikeVolley& volley) {
    ordered_json arr = ordered_json::array();
    for (uint32_t i = 0; i < volley.n(); ++i)
        if (volley.spikes[i])
            arr.push_back(ordered_json{{"input", i}, {"t", *volley.spikes[i]}});
    return arr.dump(2) + "\n";
}

NeuronConfig load_config_file(const std::filesystem::path& path) {
    ordered_json doc = ordered_json::parse(read_file(path));
    NeuronConfig cfg;
    for (const auto& key : {"n", "weights", "threshold", "kind"})
        if (!doc.contains(key))
            throw std::runtime_error("config missing required field '" + std::string(key) + "'");
    cfg.n = doc.at("n").get<uint32_t>();
    cfg.weights = doc.at("weights").get<std::vector<uint32_t>>();
    cfg.threshold = doc.at("threshold").get<uint32_t>();
    const std::string kind = doc.at("kind").get<std::string>();
    const auto parsed = dendrite_kind_from_string(kind);
    if (!parsed)
        throw std::runtime_error("unknown dendrite kind '" + kind + "'");
    cfg.kind = *parsed;
    if (doc.contains("k") && !doc.at("k").is_null())
        cfg.k = doc.at("k").get<uint32_t>();
    if (doc.contains("window"))
        cfg.window = doc.at("window").get<uint32_t>();
    if (doc.contains("pulse_len"))
        cfg.pulse_len = doc.at("pulse_len").get<uint32_t>();
    if (doc.contains("acc_bits"))
        cfg.acc_bits = doc.at("acc_bits").get<uint32_t>();
    if (doc.contains("weight_max"))
        cfg.weight_max = doc.at("weight_max").get<uint32_t>();
    if (doc.contains("strict_threshold"))
        cfg.strict_threshold = doc.at("strict_threshold").get<bool>();
    if (doc.contains("net") && !doc.at("net").is_null()) {
        const std::filesystem::path net_path = doc.at("net").get<std::string>();
        const auto resolved =
            net_path.is_absolute() ? net_path : path.parent_path() / net_path;
        cfg.network = std::make_shared<const SortingNetwork>(
            load_network_file(resolved, NetworkOrigin::LoadedCustom));
    }
    validate_config(cfg);
    return cfg;
}

std::string sim_result_to_json(const SimResult& result) {
    ordered_json doc;
    if (result.fire_time)
        doc["fire_time"] = *result.fire_time;
    else
        doc["fire_time"] = nullptr;
    doc["trace"] = result.trace;
    doc["increments"] = result.increments;
    doc["axon"] = result.axon;
    doc["dropped_spikes"] = result.dropped_spikes;
    doc["max_active"] = result.max_active;
    return doc.dump(2) + "\n";
}

std::string counts_to_json(const SelectorCounts& counts) {
    ordered_json doc;
    doc["total"] = counts.total;
    doc["mandatory"] = counts.mandatory;
    doc["half"] = counts.half;
    return doc.dump(2) + "\n";
}

std::string equivalence_to_csv(const EquivalenceReport& report) {
    std::string out = "volley,fire_base,fire_alt,fire_match,trace_match,max_active,dropped_alt\n";
    for (const auto& row : report.rows) {
        out += std::to_string(row.index);
        out += ',';
        out += row.fire_base ? std::to_string(*row.fire_base) : "none";
        out += ',';
        out += row.fire_alt ? std::to_string(*row.fire_alt) : "none";
        out += ',';
        out += row.fire_match ? '1' : '0';
        out += ',';
        out += row.trace_match ? '1' : '0';
        out += ',';
        out += std::to_string(row.max_active);
        out += ',';
        out += std::to_string(row.dropped_alt);
        out += '\n';
    }
    return out;
}

std::string equivalence_summary_json(const EquivalenceReport& report) {
    ordered_json doc;
    doc["volleys"] = report.volleys;
    doc["fire_matches"] = report.fire_matches;
    doc["trace_matches"] = report.trace_matches;
    doc["sparse_volleys"] = report.sparse_volleys;
    doc["sparse_violations"] = report.sparse_violations;
    return doc.dump(2) + "\n";
}

std::string ranked_to_csv(std::span<const RankedDesign> table) {
    std::string out = "design,and2,or2,ha,fa,removed,selector_ge,pc_ge,dendrite_ge,neuron_ge\n";
    for (const auto& row : table) {
        out += row.design;
        out += ',' + std::to_string(row.report.and2);
        out += ',' + std::to_string(row.report.or2);
        out += ',' + std::to_string(row.report.ha);
        out += ',' + std::to_string(row.report.fa);
        out += ',' + std::to_string(row.report.removed_gates);
        out += ',' + std::to_string(row.report.selector_ge);
        out += ',' + std::to_string(row.report.pc_ge);
        out += ',' + std::to_string(row.dendrite_ge);
        out += ',' + std::to_string(row.neuron_ge);
        out += '\n';
    }
    return out;
}

std::string ranked_to_plot_data(uint32_t n, uint32_t k, std::span<const RankedDesign> table) {
    std::string out = "n,k,design,ge\n";
    for (const auto& row : table) {
        out += std::to_string(n) + ',' + std::to_string(k) + ',' + row.design + ',' +
               std::to_string(row.dendrite_ge) + '\n';
    }
    return out;
}

std::string validation_to_json(const ValidationReport& report) {
    ordered_json doc;
    doc["passed"] = report.passed;
    doc["exhaustive"] = report.exhaustive;
    doc["vectors_checked"] = report.vectors_checked;
    if (report.counterexample)
        doc["counterexample"] = report.counterexample->to_string();
    else
        doc["counterexample"] = nullptr;
    return doc.dump(2) + "\n";
}

std::string manifest_to_json(const RunManifest& manifest) {
    ordered_json doc;
    doc["command"] = manifest.command;
    ordered_json params = ordered_json::object();
    for (const auto& [key, value] : manifest.params)
        params[key] = value;
    doc["params"] = params;
    ordered_json inputs = ordered_json::object();
    for (const auto& [path, digest] : manifest.inputs)
        inputs[path] = digest;
    doc["inputs"] = inputs;
    if (manifest.seed)
        doc["seed"] = *manifest.seed;
    else
        doc["seed"] = nullptr;
    doc["version"] = std::string(kToolVersion);
    doc["outputs"] = manifest.outputs;
    return doc.dump(2) + "\n";
}

} // namespace utk
