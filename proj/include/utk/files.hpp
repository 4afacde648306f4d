#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "utk/cost.hpp"
#include "utk/neuron.hpp"
#include "utk/topk.hpp"

namespace utk {

inline constexpr std::string_view kToolVersion = "0.1.0";

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// FNV-1a over the raw bytes, hex encoded; used to pin input files in run
// manifests.
std::string fnv1a_hex(std::string_view bytes);

// Volley files: either a JSON array of {"input": i, "t": cycle} objects or
// CSV lines "input,t" ('#' comments allowed). Inputs not listed never
// spike; duplicates are rejected.
SpikeVolley parse_volley(std::string_view text, uint32_t n);
SpikeVolley load_volley_file(const std::filesystem::path& path, uint32_t n);
std::string volley_to_json(const SpikeVolley& volley);

// Neuron config JSON; a "net" entry is resolved relative to the config
// file's directory.
NeuronConfig load_config_file(const std::filesystem::path& path);

std::string sim_result_to_json(const SimResult& result);
std::string counts_to_json(const SelectorCounts& counts);
std::string equivalence_to_csv(const EquivalenceReport& report);
std::string equivalence_summary_json(const EquivalenceReport& report);
std::string ranked_to_csv(std::span<const RankedDesign> table);
// One "n,k,design,ge" tuple per design, for external plotting.
std::string ranked_to_plot_data(uint32_t n, uint32_t k, std::span<const RankedDesign> table);
std::string validation_to_json(const ValidationReport& report);

struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params; // ordered as given
    std::vector<std::pair<std::string, std::string>> inputs; // path -> digest
    std::optional<uint64_t> seed;
    std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& manifest);

} // namespace utk
