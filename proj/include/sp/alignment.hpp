#pragma once

#include <string>
#include <vector>

#include "sp/pattern.hpp"

namespace sp {

// One use of a stored pattern inside an alignment. The same pattern may
// appear several times (recursion); (pid, instance) is unique per alignment.
struct Appearance {
    PatternId pid = 0;
    int instance = 0;
};

struct Cell {
    int row = 0;
    int pos = 0;
    bool operator==(const Cell& o) const { return row == o.row && pos == o.pos; }
    bool operator<(const Cell& o) const { return row != o.row ? row < o.row : pos < o.pos; }
};

// A column owns one symbol occurrence per participating row; with two or
// more cells all tokens are equal (unification).
struct Column {
    std::string token;
    std::vector<Cell> cells; // sorted by row
    bool matched() const { return cells.size() >= 2; }
};

struct CompressionScore {
    double b_new = 0.0;
    double b_enc = 0.0;
    double cd = 0.0;
    double coverage = 0.0;
};

// Rows of pattern appearances plus the ordered column structure. Row 0 is
// always the New pattern; the order of rows 1..n carries no meaning for the
// score. Columns are kept in a deterministic linear extension of the order
// constraints imposed by the rows.
struct MultipleAlignment {
    struct Row {
        Appearance appearance;
        std::vector<Symbol> symbols;
        int prefix_len = 0;
        int suffix_len = 0;
    };

    std::vector<Row> rows;
    std::vector<Column> columns;
    CompressionScore score;

    // column index per (row, pos); filled by assemble_columns.
    std::vector<std::vector<int>> column_of;

    int row_count() const { return static_cast<int>(rows.size()); }
    bool trivial() const { return rows.size() <= 1; }
};

// Builds the column list for the given rows from groups of unified cells:
// every cell not covered by a group becomes a singleton column. Orders
// columns by a deterministic topological sort of the per-row chains and
// fills column_of. Throws std::invalid_argument when the groups violate
// token equality or create an order cycle.
void assemble_columns(MultipleAlignment& ma, const std::vector<std::vector<Cell>>& unified);

// Checks per-row monotonicity and token-homogeneous columns.
bool structurally_valid(const MultipleAlignment& ma, std::string* why = nullptr);

MultipleAlignment trivial_alignment(const Pattern& new_pattern);

// Multiset of pids over rows 1..n, sorted.
std::vector<PatternId> row_pid_multiset(const MultipleAlignment& ma);

// Tokens of matched columns, sorted (one entry per column).
std::vector<std::string> matched_token_multiset(const MultipleAlignment& ma);

} // namespace sp
