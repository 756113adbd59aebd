#include "chain_search.hpp"

#include <algorithm>
#include <map>

namespace sp::detail {

namespace {

struct Node {
    int view_index;
    int cand_pos;
};

bool pair_list_less(const std::vector<std::pair<int, int>>& a,
                    const std::vector<std::pair<int, int>>& b) {
    return a < b;
}

} // namespace

std::vector<Chain> chain_search(const std::vector<ViewItem>& view,
                                const std::vector<Bitset>& ancestors,
                                std::size_t column_count,
                                const std::vector<std::string>& candidate_tokens,
                                const std::vector<double>& token_weight,
                                int max_results) {
    std::vector<Node> nodes;
    for (int p = 0; p < static_cast<int>(candidate_tokens.size()); ++p)
        for (int v = 0; v < static_cast<int>(view.size()); ++v)
            if (view[v].token == candidate_tokens[p]) nodes.push_back({v, p});
    // sorted by (cand_pos, view index) by construction order above? No:
    // loops give (p-major, v-minor) which is exactly (cand_pos, view index).

    const int keep = std::max(max_results, 1);
    // chains ending at each node, best `keep` by (weight desc, pairs lex)
    std::vector<std::vector<Chain>> ending(nodes.size());

    auto chain_rank_less = [](const Chain& a, const Chain& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return pair_list_less(a.pairs, b.pairs);
    };

    for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
        const Node& node = nodes[ni];
        const int col = view[node.view_index].column;
        std::vector<Chain>& bucket = ending[ni];

        Chain single;
        single.pairs = {{node.view_index, node.cand_pos}};
        single.weight = token_weight[node.cand_pos];
        single.forbidden = Bitset(column_count);
        single.forbidden.merge(ancestors[col]);
        single.forbidden.set(col);
        bucket.push_back(std::move(single));

        for (std::size_t pj = 0; pj < ni; ++pj) {
            if (nodes[pj].cand_pos >= node.cand_pos) continue;
            for (const Chain& prev : ending[pj]) {
                if (prev.forbidden.test(col)) continue; // col ⪯ an earlier pick
                Chain ext;
                ext.pairs = prev.pairs;
                ext.pairs.emplace_back(node.view_index, node.cand_pos);
                ext.weight = prev.weight + token_weight[node.cand_pos];
                ext.forbidden = prev.forbidden;
                ext.forbidden.merge(ancestors[col]);
                ext.forbidden.set(col);
                bucket.push_back(std::move(ext));
            }
        }
        std::sort(bucket.begin(), bucket.end(), chain_rank_less);
        if (static_cast<int>(bucket.size()) > keep) bucket.resize(keep);
    }

    std::vector<Chain> all;
    for (auto& bucket : ending)
        for (Chain& c : bucket) all.push_back(std::move(c));
    std::sort(all.begin(), all.end(), chain_rank_less);

    // keep only maximal chains: drop any chain whose pair set is contained
    // in an already kept chain (supersets rank first, weights are positive)
    std::vector<Chain> kept;
    for (Chain& c : all) {
        bool subset = false;
        for (const Chain& k : kept) {
            if (k.pairs.size() < c.pairs.size()) continue;
            std::size_t i = 0;
            for (const auto& pr : k.pairs) {
                if (i < c.pairs.size() && pr == c.pairs[i]) ++i;
            }
            if (i == c.pairs.size()) {
                subset = true;
                break;
            }
        }
        if (!subset) kept.push_back(std::move(c));
        if (static_cast<int>(kept.size()) >= keep) break;
    }
    return kept;
}

} // namespace sp::detail
