#include "sp/align_pair.hpp"

#include "chain_search.hpp"

namespace sp {

std::vector<MatchSet> align_pair(const std::vector<Symbol>& base,
                                 const std::vector<Symbol>& candidate,
                                 const SymbolCosts& costs,
                                 int max_results) {
    using detail::Bitset;
    const std::size_t n = base.size();
    std::vector<detail::ViewItem> view(n);
    std::vector<Bitset> ancestors(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) {
        view[i] = {static_cast<int>(i), base[i].token};
        if (i > 0) {
            ancestors[i] = ancestors[i - 1];
            ancestors[i].set(i - 1);
        }
    }
    std::vector<std::string> cand_tokens;
    std::vector<double> weights;
    cand_tokens.reserve(candidate.size());
    for (const Symbol& s : candidate) {
        cand_tokens.push_back(s.token);
        weights.push_back(costs.cost(s.token));
    }

    std::vector<detail::Chain> chains =
        detail::chain_search(view, ancestors, n, cand_tokens, weights, max_results);

    std::vector<MatchSet> out;
    for (const detail::Chain& c : chains) {
        MatchSet ms;
        ms.reserve(c.pairs.size());
        for (const auto& [v, p] : c.pairs) ms.emplace_back(view[v].column, p);
        out.push_back(std::move(ms));
    }
    if (out.empty()) out.push_back({}); // no shared token: the empty match set
    return out;
}

std::vector<MatchSet> align_pair(const std::vector<Symbol>& base,
                                 const Pattern& candidate,
                                 const Store& store,
                                 int max_results) {
    return align_pair(base, candidate.symbols, SymbolCosts(store), max_results);
}

} // namespace sp
