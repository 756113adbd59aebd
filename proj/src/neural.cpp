#include "sp/neural.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <unordered_set>

#include "sp/score.hpp"

namespace sp {

namespace {

// An excitation source available to support formation in one stage: either
// an activated receptor occurrence or the ID bracket of a live instance.
struct Event {
    bool receptor = false;
    int position = -1;    // input position when receptor
    std::string token;    // receptor token
    int instance = -1;    // producer instance otherwise
    int assembly = -1;
    int lo = 0, hi = 0;   // input span covered
    double quality = 0.0; // activation carried by each bracket signal
};

struct PartialSupport {
    int last_body = -1;
    int last_hi = -1;
    double excitation = 0.0;
    std::vector<SupportCell> cells;
};

std::string support_signature(int assembly, const std::vector<SupportCell>& cells) {
    std::string sig = std::to_string(assembly);
    for (const SupportCell& c : cells) {
        sig += '|';
        sig += std::to_string(c.body_index);
        sig += c.from_receptor ? 'r' : 'i';
        sig += std::to_string(c.from_receptor ? c.receptor_pos : c.source_instance);
        sig += ':';
        sig += std::to_string(c.source_index);
    }
    return sig;
}

bool support_rank_less(const PartialSupport& a, const PartialSupport& b) {
    if (a.excitation != b.excitation) return a.excitation > b.excitation;
    if (a.cells.size() != b.cells.size()) return a.cells.size() > b.cells.size();
    auto desc = [](const SupportCell& c) {
        return std::tuple<int, bool, int, int>(c.body_index, c.from_receptor,
                                               c.from_receptor ? c.receptor_pos : c.source_instance,
                                               c.source_index);
    };
    for (std::size_t i = 0; i < std::min(a.cells.size(), b.cells.size()); ++i) {
        if (desc(a.cells[i]) != desc(b.cells[i])) return desc(a.cells[i]) < desc(b.cells[i]);
    }
    return false;
}

// first prefix / last suffix symbol index carrying the given token
int prefix_index(const PatternAssembly& a, const std::string& token) {
    for (int i = 0; i < a.prefix_len; ++i)
        if (a.symbols[i].token == token) return i;
    return -1;
}
int suffix_index(const PatternAssembly& a, const std::string& token) {
    for (int i = static_cast<int>(a.symbols.size()) - 1;
         i >= static_cast<int>(a.symbols.size()) - a.suffix_len; --i)
        if (a.symbols[i].token == token) return i;
    return -1;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

int Network::assembly_index(PatternId pid) const {
    for (std::size_t i = 0; i < assemblies.size(); ++i)
        if (assemblies[i].pid == pid) return static_cast<int>(i);
    return -1;
}

Network compile(const Store& store) {
    Network net;
    net.symbol_freq = store.symbol_frequencies();
    net.total_mass = store.total_mass();

    std::unordered_set<std::string> id_field_tokens;
    for (const auto& [pid, p] : store.patterns()) {
        for (int i = 0; i < p.prefix_len; ++i) id_field_tokens.insert(p.symbols[i].token);
        for (int i = p.body_end(); i < p.size(); ++i) id_field_tokens.insert(p.symbols[i].token);
    }

    for (const auto& [pid, p] : store.patterns()) {
        PatternAssembly a;
        a.pid = pid;
        a.prefix_len = p.prefix_len;
        a.suffix_len = p.suffix_len;
        const int self = static_cast<int>(net.assemblies.size());
        for (int i = 0; i < p.size(); ++i) {
            NeuralSymbol ns{p.symbols[i].token, p.symbols[i].kind, self, i, p.in_body(i)};
            if (ns.in_body) a.body_indices.push_back(i);
            a.symbols.push_back(std::move(ns));
        }
        net.assemblies.push_back(std::move(a));
    }

    // receptors: surface tokens only
    std::set<std::string> surface;
    for (const PatternAssembly& a : net.assemblies)
        for (int i : a.body_indices)
            if (a.symbols[i].kind == SymbolKind::Contents &&
                !id_field_tokens.count(a.symbols[i].token))
                surface.insert(a.symbols[i].token);
    int rid = 0;
    for (const std::string& t : surface) net.receptors[t] = rid++;

    // ID symbols excite token-equal body symbols everywhere
    net.incoming.resize(net.assemblies.size());
    for (std::size_t p = 0; p < net.assemblies.size(); ++p)
        net.incoming[p].resize(net.assemblies[p].symbols.size());
    for (std::size_t q = 0; q < net.assemblies.size(); ++q) {
        const PatternAssembly& from = net.assemblies[q];
        for (int j = 0; j < static_cast<int>(from.symbols.size()); ++j) {
            if (from.symbols[j].in_body) continue;
            for (std::size_t p = 0; p < net.assemblies.size(); ++p) {
                const PatternAssembly& to = net.assemblies[p];
                for (int i : to.body_indices) {
                    if (to.symbols[i].token != from.symbols[j].token) continue;
                    net.incoming[p][i].push_back(static_cast<int>(net.connections.size()));
                    net.connections.push_back({static_cast<int>(q), j, static_cast<int>(p), i});
                }
            }
        }
    }
    return net;
}

std::vector<double> inhibit_select(const std::vector<double>& excitation,
                                   const std::vector<std::vector<int>>& groups,
                                   double retain_ratio) {
    std::vector<double> out = excitation;
    for (const auto& group : groups) {
        double top = 0.0;
        for (int i : group) top = std::max(top, excitation[i]);
        const double bar = top * retain_ratio;
        for (int i : group)
            if (excitation[i] < bar) out[i] = 0.0;
    }
    return out;
}

ExcitationTrace step_stages(const Network& net, const std::vector<std::string>& input,
                            const SimConfig& cfg) {
    if (input.empty()) throw std::invalid_argument("simulation input must be non-empty");

    ExcitationTrace trace;
    trace.input = input;

    const int n_assemblies = static_cast<int>(net.assemblies.size());
    std::vector<Instance>& instances = trace.instances;
    std::unordered_set<std::string> seen_signatures;

    // stage 1: receptor activation
    std::vector<Event> receptor_events;
    for (int k = 0; k < static_cast<int>(input.size()); ++k) {
        auto it = net.receptors.find(input[k]);
        if (it == net.receptors.end()) continue;
        Event ev;
        ev.receptor = true;
        ev.position = k;
        ev.token = input[k];
        ev.lo = ev.hi = k;
        receptor_events.push_back(ev);
    }
    StageState first;
    first.stage = 1;
    first.assembly_excitation.assign(n_assemblies, 0.0);
    trace.stages.push_back(first);

    if (receptor_events.empty()) {
        trace.fixpoint = true;
        return trace;
    }

    for (int stage = 2; stage <= cfg.max_stages; ++stage) {
        bool changed = false;

        // event pool: receptors plus brackets of instances live at stage start
        std::vector<Event> events = receptor_events;
        for (const Instance& inst : instances) {
            if (!inst.active) continue;
            Event ev;
            ev.receptor = false;
            ev.instance = inst.id;
            ev.assembly = inst.assembly;
            ev.lo = inst.span_lo;
            ev.hi = inst.span_hi;
            ev.quality = inst.quality;
            events.push_back(ev);
        }
        std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
            if (a.lo != b.lo) return a.lo < b.lo;
            if (a.hi != b.hi) return a.hi < b.hi;
            if (a.receptor != b.receptor) return a.receptor; // receptors first, deterministic
            if (a.receptor) return a.position < b.position;
            return a.instance < b.instance;
        });

        const int state_beam = std::max(64, cfg.max_appearances * 8);

        for (int ai = 0; ai < n_assemblies; ++ai) {
            const PatternAssembly& assembly = net.assemblies[ai];

            std::vector<PartialSupport> states{PartialSupport{}};
            for (const Event& ev : events) {
                std::vector<PartialSupport> grown = states; // skipping the event
                for (const PartialSupport& st : states) {
                    if (st.last_hi >= ev.lo) continue;
                    if (ev.receptor) {
                        for (int i : assembly.body_indices) {
                            if (i <= st.last_body) continue;
                            if (assembly.symbols[i].token != ev.token) continue;
                            PartialSupport next = st;
                            next.last_body = i;
                            next.last_hi = ev.hi;
                            next.excitation += 1.0;
                            next.cells.push_back({i, true, ev.position, -1, -1, 1.0});
                            grown.push_back(std::move(next));
                        }
                        continue;
                    }
                    const PatternAssembly& producer = net.assemblies[ev.assembly];
                    std::vector<std::pair<int, int>> opens, closes; // (body idx, producer idx)
                    for (int i : assembly.body_indices) {
                        if (i <= st.last_body) continue;
                        const int pi = prefix_index(producer, assembly.symbols[i].token);
                        if (pi >= 0) opens.emplace_back(i, pi);
                        const int si = suffix_index(producer, assembly.symbols[i].token);
                        if (si >= 0) closes.emplace_back(i, si);
                    }
                    // paired bracket: open then close, nothing in between
                    for (const auto& [io, po] : opens) {
                        for (const auto& [ic, pc] : closes) {
                            if (ic <= io) continue;
                            PartialSupport next = st;
                            next.last_body = ic;
                            next.last_hi = ev.hi;
                            next.excitation += 2.0 * ev.quality;
                            next.cells.push_back({io, false, -1, ev.instance, po, ev.quality});
                            next.cells.push_back({ic, false, -1, ev.instance, pc, ev.quality});
                            grown.push_back(std::move(next));
                        }
                    }
                    // single-sided use still claims the whole span
                    for (const auto& [io, po] : opens) {
                        PartialSupport next = st;
                        next.last_body = io;
                        next.last_hi = ev.hi;
                        next.excitation += ev.quality;
                        next.cells.push_back({io, false, -1, ev.instance, po, ev.quality});
                        grown.push_back(std::move(next));
                    }
                    for (const auto& [ic, pc] : closes) {
                        PartialSupport next = st;
                        next.last_body = ic;
                        next.last_hi = ev.hi;
                        next.excitation += ev.quality;
                        next.cells.push_back({ic, false, -1, ev.instance, pc, ev.quality});
                        grown.push_back(std::move(next));
                    }
                }
                std::sort(grown.begin(), grown.end(), support_rank_less);
                if (static_cast<int>(grown.size()) > state_beam) grown.resize(state_beam);
                states = std::move(grown);
            }

            for (const PartialSupport& st : states) {
                if (st.cells.empty()) continue;
                const std::string sig = support_signature(ai, st.cells);
                if (!seen_signatures.insert(sig).second) continue;
                Instance inst;
                inst.id = static_cast<int>(instances.size());
                inst.assembly = ai;
                inst.born_stage = stage;
                inst.cells = st.cells;
                inst.excitation = st.excitation;
                inst.quality = st.excitation / std::max(1, assembly.body_size());
                int lo = static_cast<int>(input.size()), hi = -1;
                for (const SupportCell& c : st.cells) {
                    if (c.from_receptor) {
                        lo = std::min(lo, c.receptor_pos);
                        hi = std::max(hi, c.receptor_pos);
                    } else {
                        lo = std::min(lo, instances[c.source_instance].span_lo);
                        hi = std::max(hi, instances[c.source_instance].span_hi);
                    }
                }
                inst.span_lo = lo;
                inst.span_hi = hi;
                instances.push_back(std::move(inst));
                changed = true;
            }
        }

        // cap simultaneous clones per assembly
        for (int ai = 0; ai < n_assemblies; ++ai) {
            std::vector<int> live;
            for (const Instance& inst : instances)
                if (inst.active && inst.assembly == ai) live.push_back(inst.id);
            if (static_cast<int>(live.size()) <= cfg.max_appearances) continue;
            std::sort(live.begin(), live.end(), [&](int a, int b) {
                const Instance& A = instances[a];
                const Instance& B = instances[b];
                if (A.excitation != B.excitation) return A.excitation > B.excitation;
                if (A.span_lo != B.span_lo) return A.span_lo < B.span_lo;
                if (A.span_hi != B.span_hi) return A.span_hi < B.span_hi;
                return A.id < B.id;
            });
            for (std::size_t i = cfg.max_appearances; i < live.size(); ++i) {
                instances[live[i]].active = false;
                changed = true;
            }
        }

        // lateral inhibition among instances sharing an excited input source
        std::vector<int> active_ids;
        for (const Instance& inst : instances)
            if (inst.active) active_ids.push_back(inst.id);
        if (!active_ids.empty()) {
            std::map<std::string, std::vector<int>> by_source; // source key -> active index
            for (std::size_t i = 0; i < active_ids.size(); ++i) {
                for (const SupportCell& c : instances[active_ids[i]].cells) {
                    const std::string key = c.from_receptor
                                                ? "r" + std::to_string(c.receptor_pos)
                                                : "i" + std::to_string(c.source_instance);
                    by_source[key].push_back(static_cast<int>(i));
                }
            }
            UnionFind uf(static_cast<int>(active_ids.size()));
            for (const auto& [key, members] : by_source)
                for (std::size_t i = 1; i < members.size(); ++i) uf.unite(members[0], members[i]);

            std::map<int, std::vector<int>> components;
            for (std::size_t i = 0; i < active_ids.size(); ++i)
                components[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
            std::vector<std::vector<int>> groups;
            for (auto& [root, members] : components)
                if (members.size() > 1) groups.push_back(std::move(members));

            std::vector<double> exc(active_ids.size());
            for (std::size_t i = 0; i < active_ids.size(); ++i)
                exc[i] = instances[active_ids[i]].excitation;
            const std::vector<double> kept = inhibit_select(exc, groups, cfg.retain_ratio);
            for (std::size_t i = 0; i < active_ids.size(); ++i) {
                if (kept[i] == 0.0 && exc[i] > 0.0) {
                    instances[active_ids[i]].active = false;
                    changed = true;
                }
            }
        }

        StageState state;
        state.stage = stage;
        state.assembly_excitation.assign(n_assemblies, 0.0);
        for (const Instance& inst : instances)
            if (inst.active)
                state.assembly_excitation[inst.assembly] =
                    std::max(state.assembly_excitation[inst.assembly], inst.excitation);
        trace.stages.push_back(std::move(state));

        if (!changed) {
            trace.fixpoint = true;
            break;
        }
    }
    return trace;
}

std::string ExcitationTrace::text(const Network& net) const {
    std::ostringstream out;
    for (const StageState& st : stages) {
        out << "stage " << st.stage << ":";
        for (std::size_t a = 0; a < net.assemblies.size(); ++a) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", st.assembly_excitation[a]);
            out << " p" << net.assemblies[a].pid << "=" << buf;
        }
        out << '\n';
    }
    return out.str();
}

MultipleAlignment extract_nama(const ExcitationTrace& trace, const Network& net) {
    // collect the support tree under every live instance
    auto tree_of = [&](int root) {
        std::vector<int> order;
        std::set<int> seen;
        std::vector<int> stack{root};
        while (!stack.empty()) {
            const int id = stack.back();
            stack.pop_back();
            if (!seen.insert(id).second) continue;
            order.push_back(id);
            for (const SupportCell& c : trace.instances[id].cells)
                if (!c.from_receptor) stack.push_back(c.source_instance);
        }
        return order;
    };
    auto coverage_of = [&](const std::vector<int>& tree) {
        std::set<int> cover;
        for (int id : tree)
            for (const SupportCell& c : trace.instances[id].cells)
                if (c.from_receptor) cover.insert(c.receptor_pos);
        return cover;
    };

    int best = -1;
    std::vector<int> best_tree;
    std::size_t best_cover = 0;
    for (const Instance& inst : trace.instances) {
        if (!inst.active) continue;
        std::vector<int> tree = tree_of(inst.id);
        const std::size_t cover = coverage_of(tree).size();
        if (cover == 0) continue;
        bool better = false;
        if (best < 0) {
            better = true;
        } else if (cover != best_cover) {
            better = cover > best_cover;
        } else if (tree.size() != best_tree.size()) {
            better = tree.size() < best_tree.size();
        } else if (trace.instances[inst.id].excitation !=
                   trace.instances[best].excitation) {
            better = trace.instances[inst.id].excitation > trace.instances[best].excitation;
        }
        if (better) {
            best = inst.id;
            best_tree = std::move(tree);
            best_cover = cover;
        }
    }
    if (best < 0) throw NamaError("no winning assembly is connected to the input");

    MultipleAlignment ma;
    MultipleAlignment::Row input_row;
    input_row.appearance = {0, 0};
    for (const std::string& t : trace.input) input_row.symbols.push_back(contents_symbol(t));
    ma.rows.push_back(std::move(input_row));

    std::map<int, int> row_of; // instance id -> row
    std::map<PatternId, int> instance_counter;
    for (int id : best_tree) {
        const Instance& inst = trace.instances[id];
        const PatternAssembly& a = net.assemblies[inst.assembly];
        MultipleAlignment::Row row;
        row.appearance = {a.pid, instance_counter[a.pid]++};
        for (const NeuralSymbol& ns : a.symbols) row.symbols.push_back({ns.token, ns.kind});
        row.prefix_len = a.prefix_len;
        row.suffix_len = a.suffix_len;
        row_of[id] = ma.row_count();
        ma.rows.push_back(std::move(row));
    }

    std::vector<std::vector<Cell>> unified;
    for (int id : best_tree) {
        const Instance& inst = trace.instances[id];
        const int r = row_of[id];
        for (const SupportCell& c : inst.cells) {
            if (c.from_receptor) {
                unified.push_back({Cell{0, c.receptor_pos}, Cell{r, c.body_index}});
            } else {
                unified.push_back(
                    {Cell{row_of[c.source_instance], c.source_index}, Cell{r, c.body_index}});
            }
        }
    }
    assemble_columns(ma, unified);

    SymbolCosts costs(net.symbol_freq, net.total_mass);
    ma.score = score(ma, costs);
    return ma;
}

} // namespace sp
