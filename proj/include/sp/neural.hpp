#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sp/alignment.hpp"
#include "sp/store.hpp"

namespace sp {

// One neuron cluster standing for one symbol of a pattern assembly.
struct NeuralSymbol {
    std::string token;
    SymbolKind kind = SymbolKind::Contents;
    int assembly = 0;
    int index = 0;   // position within the assembly
    bool in_body = false;
};

// The neural realisation of a stored pattern: an ordered array of neural
// symbols with lateral links between index-adjacent members (implicit).
struct PatternAssembly {
    PatternId pid = 0;
    std::vector<NeuralSymbol> symbols;
    int prefix_len = 0;
    int suffix_len = 0;
    std::vector<int> body_indices;
    int body_size() const { return static_cast<int>(body_indices.size()); }
};

// Axon from an ID symbol of one assembly to a token-equal body symbol of
// another (or the same) assembly. Unit weight.
struct Connection {
    int from_assembly = 0;
    int from_index = 0;
    int to_assembly = 0;
    int to_index = 0;
    double weight = 1.0;
};

struct Network {
    std::vector<PatternAssembly> assemblies;
    std::map<std::string, int> receptors; // token -> receptor id, surface tokens only
    std::vector<Connection> connections;
    // incoming[assembly][body slot] lists connection indices feeding it
    std::vector<std::vector<std::vector<int>>> incoming;
    // frequency snapshot so NAMAs can be scored without the store
    std::unordered_map<std::string, std::int64_t> symbol_freq;
    std::int64_t total_mass = 0;

    int assembly_index(PatternId pid) const;
};

struct SimConfig {
    double retain_ratio = 0.8;
    int max_stages = 16;
    int max_appearances = 10; // simultaneous instances per assembly
};

// How one body slot of an instance is driven.
struct SupportCell {
    int body_index = 0;         // symbol index within the assembly
    bool from_receptor = false;
    int receptor_pos = -1;      // input position when from_receptor
    int source_instance = -1;   // producer instance otherwise
    int source_index = -1;      // producer symbol index (an ID symbol)
    double activation = 0.0;
};

// A pattern assembly brought to life by one order-consistent set of
// excitatory signals. Cloning an assembly once per distinct support is what
// lets recursion hold several appearances at once.
struct Instance {
    int id = 0;
    int assembly = 0;
    int born_stage = 0;
    std::vector<SupportCell> cells;
    double excitation = 0.0;
    double quality = 0.0; // excitation / body size
    int span_lo = 0;
    int span_hi = 0;
    bool active = true;
};

struct StageState {
    int stage = 0;
    std::vector<double> assembly_excitation; // max over active instances
};

struct ExcitationTrace {
    std::vector<StageState> stages;
    std::vector<Instance> instances; // immutable record, including suppressed ones
    std::vector<std::string> input;
    bool fixpoint = false;

    std::string text(const Network& net) const; // stage log, stable field order
};

// One assembly per stored pattern, one receptor per distinct contents token
// that appears in no pattern's ID field, connections wired by token
// equality from ID symbols (and receptors) into body symbols.
Network compile(const Store& store);

// Staged processing: receptor activation, then repeated rounds of support
// formation, inhibition-based selection among instances sharing an input
// source, and onward excitation from the ID brackets of surviving
// instances, until a fixpoint or cfg.max_stages.
ExcitationTrace step_stages(const Network& net, const std::vector<std::string>& input,
                            const SimConfig& cfg);

// Within each group, zeroes entries strictly below max * retain_ratio; exact
// ties with the maximum are all retained. Singleton groups are unchanged.
std::vector<double> inhibit_select(const std::vector<double>& excitation,
                                   const std::vector<std::vector<int>>& groups,
                                   double retain_ratio);

struct NamaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Rebuilds a multiple alignment from the winning instance tree: rows are
// the winning assemblies as appearances, columns come from the receptor
// matches and active connections. Throws NamaError when no instance tree
// touches the input.
MultipleAlignment extract_nama(const ExcitationTrace& trace, const Network& net);

} // namespace sp
