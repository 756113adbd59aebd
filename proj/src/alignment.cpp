#include "sp/alignment.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>

namespace sp {

namespace {

struct ColumnDraft {
    std::string token;
    std::vector<Cell> cells;
};

// Deterministic topological sort of the draft columns under the per-row
// successor chains. Ready columns are emitted smallest first by their
// minimal (row, pos) cell, which pins the interleaving of otherwise
// unordered columns.
std::vector<int> linear_extension(const std::vector<ColumnDraft>& drafts,
                                  const std::vector<std::vector<int>>& col_of) {
    const int n = static_cast<int>(drafts.size());
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indegree(n, 0);
    for (const auto& row_cols : col_of) {
        for (std::size_t p = 1; p < row_cols.size(); ++p) {
            succ[row_cols[p - 1]].push_back(row_cols[p]);
            ++indegree[row_cols[p]];
        }
    }

    auto key = [&](int c) { return drafts[c].cells.front(); };
    auto cmp = [&](int a, int b) { return key(b) < key(a); }; // min-heap
    std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
    for (int c = 0; c < n; ++c)
        if (indegree[c] == 0) ready.push(c);

    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        int c = ready.top();
        ready.pop();
        order.push_back(c);
        for (int s : succ[c])
            if (--indegree[s] == 0) ready.push(s);
    }
    if (static_cast<int>(order.size()) != n)
        throw std::invalid_argument("alignment column order contains a cycle");
    return order;
}

} // namespace

void assemble_columns(MultipleAlignment& ma, const std::vector<std::vector<Cell>>& unified) {
    const int nrows = ma.row_count();
    std::vector<std::vector<int>> group_of(nrows);
    for (int r = 0; r < nrows; ++r)
        group_of[r].assign(ma.rows[r].symbols.size(), -1);

    std::vector<ColumnDraft> drafts;
    auto token_at = [&](const Cell& c) -> const Symbol& {
        return ma.rows[c.row].symbols[c.pos];
    };

    for (const auto& group : unified) {
        if (group.size() < 2) throw std::invalid_argument("unified group needs at least two cells");
        ColumnDraft draft;
        draft.token = token_at(group.front()).token;
        for (const Cell& cell : group) {
            if (cell.row < 0 || cell.row >= nrows ||
                cell.pos < 0 || cell.pos >= static_cast<int>(ma.rows[cell.row].symbols.size()))
                throw std::invalid_argument("unified cell out of range");
            if (token_at(cell).token != draft.token)
                throw std::invalid_argument("unified cells disagree on token");
            if (group_of[cell.row][cell.pos] != -1)
                throw std::invalid_argument("cell unified twice");
            group_of[cell.row][cell.pos] = static_cast<int>(drafts.size());
            draft.cells.push_back(cell);
        }
        std::sort(draft.cells.begin(), draft.cells.end());
        drafts.push_back(std::move(draft));
    }
    for (int r = 0; r < nrows; ++r) {
        for (int p = 0; p < static_cast<int>(ma.rows[r].symbols.size()); ++p) {
            if (group_of[r][p] != -1) continue;
            ColumnDraft draft;
            draft.token = ma.rows[r].symbols[p].token;
            draft.cells.push_back({r, p});
            group_of[r][p] = static_cast<int>(drafts.size());
            drafts.push_back(std::move(draft));
        }
    }

    std::vector<std::vector<int>> col_of(nrows);
    for (int r = 0; r < nrows; ++r) {
        col_of[r].resize(ma.rows[r].symbols.size());
        for (int p = 0; p < static_cast<int>(col_of[r].size()); ++p)
            col_of[r][p] = group_of[r][p];
    }

    const std::vector<int> order = linear_extension(drafts, col_of);
    std::vector<int> position(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = static_cast<int>(i);

    ma.columns.clear();
    ma.columns.reserve(drafts.size());
    for (int idx : order) {
        Column col;
        col.token = std::move(drafts[idx].token);
        col.cells = std::move(drafts[idx].cells);
        ma.columns.push_back(std::move(col));
    }
    ma.column_of.assign(nrows, {});
    for (int r = 0; r < nrows; ++r) {
        ma.column_of[r].resize(col_of[r].size());
        for (int p = 0; p < static_cast<int>(col_of[r].size()); ++p)
            ma.column_of[r][p] = position[col_of[r][p]];
    }
}

bool structurally_valid(const MultipleAlignment& ma, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const int nrows = ma.row_count();
    std::vector<std::vector<int>> seen(nrows);
    for (int r = 0; r < nrows; ++r) seen[r].assign(ma.rows[r].symbols.size(), 0);

    for (std::size_t ci = 0; ci < ma.columns.size(); ++ci) {
        const Column& col = ma.columns[ci];
        if (col.cells.empty()) return fail("empty column");
        for (const Cell& cell : col.cells) {
            if (cell.row < 0 || cell.row >= nrows) return fail("cell row out of range");
            if (cell.pos < 0 || cell.pos >= static_cast<int>(ma.rows[cell.row].symbols.size()))
                return fail("cell pos out of range");
            if (ma.rows[cell.row].symbols[cell.pos].token != col.token)
                return fail("column token mismatch");
            seen[cell.row][cell.pos] += 1;
        }
    }
    for (int r = 0; r < nrows; ++r)
        for (int v : seen[r])
            if (v != 1) return fail("symbol occurrence not covered exactly once");

    // per-row monotonicity: positions strictly increase along the column order
    for (int r = 0; r < nrows; ++r) {
        int last_pos = -1;
        for (std::size_t ci = 0; ci < ma.columns.size(); ++ci) {
            for (const Cell& cell : ma.columns[ci].cells) {
                if (cell.row != r) continue;
                if (cell.pos <= last_pos) return fail("row order violated");
                last_pos = cell.pos;
            }
        }
        if (last_pos + 1 != static_cast<int>(ma.rows[r].symbols.size()))
            return fail("row not fully covered");
    }
    return true;
}

MultipleAlignment trivial_alignment(const Pattern& new_pattern) {
    MultipleAlignment ma;
    MultipleAlignment::Row row;
    row.appearance = {new_pattern.pid, 0};
    row.symbols = new_pattern.symbols;
    row.prefix_len = new_pattern.prefix_len;
    row.suffix_len = new_pattern.suffix_len;
    ma.rows.push_back(std::move(row));
    assemble_columns(ma, {});
    return ma;
}

std::vector<PatternId> row_pid_multiset(const MultipleAlignment& ma) {
    std::vector<PatternId> pids;
    for (int r = 1; r < ma.row_count(); ++r) pids.push_back(ma.rows[r].appearance.pid);
    std::sort(pids.begin(), pids.end());
    return pids;
}

std::vector<std::string> matched_token_multiset(const MultipleAlignment& ma) {
    std::vector<std::string> tokens;
    for (const Column& col : ma.columns)
        if (col.matched()) tokens.push_back(col.token);
    std::sort(tokens.begin(), tokens.end());
    return tokens;
}

} // namespace sp
