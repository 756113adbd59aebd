#include "sp/render.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace sp {

std::string render(const MultipleAlignment& ma) {
    const int nrows = ma.row_count();
    if (nrows == 0) return "";

    const int gutter = static_cast<int>(std::to_string(nrows - 1).size()) + 1;

    // x offset per column
    std::vector<int> xpos(ma.columns.size());
    int x = gutter;
    for (std::size_t c = 0; c < ma.columns.size(); ++c) {
        xpos[c] = x;
        x += static_cast<int>(ma.columns[c].token.size()) + 1;
    }
    const int width = x;

    // lines: row r at 2r, connector between r and r+1 at 2r+1
    std::vector<std::string> lines(2 * nrows - 1, std::string(width, ' '));

    for (int r = 0; r < nrows; ++r) {
        const std::string num = std::to_string(r);
        lines[2 * r].replace(0, num.size(), num);
    }
    for (std::size_t c = 0; c < ma.columns.size(); ++c) {
        const Column& col = ma.columns[c];
        for (const Cell& cell : col.cells)
            lines[2 * cell.row].replace(xpos[c], col.token.size(), col.token);
        for (std::size_t i = 1; i < col.cells.size(); ++i) {
            const int from = col.cells[i - 1].row;
            const int to = col.cells[i].row;
            for (int line = 2 * from + 1; line < 2 * to; ++line) lines[line][xpos[c]] = '|';
        }
    }

    std::string out;
    for (std::string& line : lines) {
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

} // namespace sp
