#include "sp/learn.hpp"

#include <algorithm>
#include <stdexcept>

namespace sp {

namespace {

struct RunSpan {
    int base_begin = 0, base_end = 0; // row-0 positions, half open
    int old_begin = 0, old_end = 0;   // row-1 positions, half open
};

struct GapSpan {
    std::vector<Symbol> base, old; // gap material on each side
};

struct Element {
    bool is_gap = false;
    int index = 0; // into runs or gaps
};

// Pulls the diagonal structure of a two-row alignment: maximal matched runs
// and the gap material between them (old side restricted to the body).
struct Segmentation {
    std::vector<RunSpan> runs;
    std::vector<GapSpan> gaps;
    std::vector<Element> order;
};

Segmentation analyse(const MultipleAlignment& ma) {
    if (ma.row_count() != 2) throw std::invalid_argument("segment requires exactly two rows");
    const auto& base = ma.rows[0];
    const auto& old_row = ma.rows[1];

    std::vector<std::pair<int, int>> pairs; // (base pos, old pos)
    for (const Column& col : ma.columns) {
        if (!col.matched()) continue;
        int bp = -1, op = -1;
        for (const Cell& cell : col.cells) (cell.row == 0 ? bp : op) = cell.pos;
        if (bp >= 0 && op >= 0) pairs.emplace_back(bp, op);
    }
    std::sort(pairs.begin(), pairs.end());
    if (pairs.empty()) throw std::invalid_argument("no matched symbols to segment around");

    Segmentation seg;
    RunSpan run{pairs[0].first, pairs[0].first + 1, pairs[0].second, pairs[0].second + 1};
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].first == run.base_end && pairs[i].second == run.old_end) {
            ++run.base_end;
            ++run.old_end;
        } else {
            seg.runs.push_back(run);
            run = {pairs[i].first, pairs[i].first + 1, pairs[i].second, pairs[i].second + 1};
        }
    }
    seg.runs.push_back(run);

    const int old_body_begin = old_row.prefix_len;
    const int old_body_end = static_cast<int>(old_row.symbols.size()) - old_row.suffix_len;

    auto gap_between = [&](int b0, int b1, int o0, int o1) -> GapSpan {
        GapSpan gap;
        for (int p = b0; p < b1; ++p) gap.base.push_back(base.symbols[p]);
        for (int p = std::max(o0, old_body_begin); p < std::min(o1, old_body_end); ++p)
            gap.old.push_back(old_row.symbols[p]);
        return gap;
    };

    auto add_gap = [&](GapSpan gap) {
        if (gap.base.empty() && gap.old.empty()) return;
        if (gap.base.empty() || gap.old.empty())
            throw std::invalid_argument("gap material on one side only; not segmentable");
        seg.order.push_back({true, static_cast<int>(seg.gaps.size())});
        seg.gaps.push_back(std::move(gap));
    };

    add_gap(gap_between(0, seg.runs.front().base_begin, 0, seg.runs.front().old_begin));
    for (std::size_t i = 0; i < seg.runs.size(); ++i) {
        seg.order.push_back({false, static_cast<int>(i)});
        const int b0 = seg.runs[i].base_end;
        const int o0 = seg.runs[i].old_end;
        const int b1 = i + 1 < seg.runs.size() ? seg.runs[i + 1].base_begin
                                               : static_cast<int>(base.symbols.size());
        const int o1 = i + 1 < seg.runs.size() ? seg.runs[i + 1].old_begin
                                               : static_cast<int>(old_row.symbols.size());
        add_gap(gap_between(b0, b1, o0, o1));
    }

    bool any_gap = false;
    for (const Element& e : seg.order) any_gap = any_gap || e.is_gap;
    if (!any_gap) throw std::invalid_argument("no unmatched run; sequences match fully");
    return seg;
}

Pattern bracketed(const IdTriple& ids, std::vector<Symbol> body, Provenance provenance,
                  std::int64_t freq) {
    Pattern p;
    p.symbols.push_back(id_symbol(ids.class_open));
    p.symbols.push_back(id_symbol(ids.member));
    for (Symbol& s : body) p.symbols.push_back(std::move(s));
    p.symbols.push_back(id_symbol(ids.class_close));
    p.prefix_len = 2;
    p.suffix_len = 1;
    p.provenance = provenance;
    p.frequency = freq;
    return p;
}

bool fully_matched_rows(const MultipleAlignment& ma) {
    if (ma.row_count() < 2 || ma.score.coverage < 1.0) return false;
    for (int r = 1; r < ma.row_count(); ++r) {
        const auto& row = ma.rows[r];
        const int body_end = static_cast<int>(row.symbols.size()) - row.suffix_len;
        for (int p = row.prefix_len; p < body_end; ++p)
            if (!ma.columns[ma.column_of[r][p]].matched()) return false;
    }
    return true;
}

IngestReport ingest_impl(const Pattern& new_pattern, Store& store, UtilityLedger& ledger,
                         const LearnConfig& cfg, int depth);

void feed_back_code(const MultipleAlignment& best, Store& store, UtilityLedger& ledger,
                    const LearnConfig& cfg, int depth) {
    std::vector<Symbol> code = derive_code_pattern(best);
    if (code.empty()) return;
    Pattern as_new;
    as_new.symbols = std::move(code);
    ingest_impl(as_new, store, ledger, cfg, depth + 1);
}

IngestReport ingest_impl(const Pattern& new_pattern, Store& store, UtilityLedger& ledger,
                         const LearnConfig& cfg, int depth) {
    if (new_pattern.symbols.empty()) throw std::invalid_argument("empty New pattern");

    IngestReport report{IngestOutcome::Stored, 0, std::nullopt, {}};
    std::vector<MultipleAlignment> ranked = build_alignments(new_pattern, store, cfg.search);
    report.best = ranked.front();
    const MultipleAlignment& best = report.best;

    ledger.window += 1;
    for (int r = 1; r < best.row_count(); ++r) ledger.credit(best.rows[r].appearance.pid, best.score.cd);

    if (fully_matched_rows(best)) {
        report.outcome = IngestOutcome::Recognized;
        for (int r = 1; r < best.row_count(); ++r)
            store.increment_frequency(best.rows[r].appearance.pid);
    } else {
        bool segmented = false;
        if (best.row_count() == 2 && best.score.coverage >= cfg.min_coverage) {
            try {
                report.segmentation = segment(best, store);
                report.outcome = IngestOutcome::Segmented;
                segmented = true;
            } catch (const std::invalid_argument&) {
                segmented = false; // fall through to verbatim storage
            }
        }
        if (!segmented) {
            const IdTriple ids = store.fresh_ids();
            report.outcome = IngestOutcome::Stored;
            report.stored_pid =
                store.insert(bracketed(ids, new_pattern.symbols, Provenance::Intake, 1));
        }
    }

    if (cfg.code_feedback && depth == 0 && report.outcome != IngestOutcome::Stored)
        feed_back_code(best, store, ledger, cfg, depth);
    return report;
}

} // namespace

void UtilityLedger::credit(PatternId pid, double cd) {
    Entry& e = entries[pid];
    e.accumulated_cd += cd;
    e.uses += 1;
    e.window_uses += 1;
}

void UtilityLedger::reset_window() {
    window = 0;
    for (auto& [pid, e] : entries) e.window_uses = 0;
}

IngestReport ingest(const Pattern& new_pattern, Store& store, UtilityLedger& ledger,
                    const LearnConfig& cfg) {
    for (const Symbol& s : new_pattern.symbols)
        if (s.kind != SymbolKind::Contents)
            throw std::invalid_argument("New patterns carry contents symbols only");
    return ingest_impl(new_pattern, store, ledger, cfg, 0);
}

SegmentationResult segment(const MultipleAlignment& ma, Store& store) {
    const Segmentation seg = analyse(ma);

    SegmentationResult result;
    std::vector<IdTriple> element_ids(seg.order.size());

    for (std::size_t i = 0; i < seg.order.size(); ++i) {
        const Element& el = seg.order[i];
        if (!el.is_gap) {
            const RunSpan& run = seg.runs[el.index];
            std::vector<Symbol> body(ma.rows[0].symbols.begin() + run.base_begin,
                                     ma.rows[0].symbols.begin() + run.base_end);
            const IdTriple ids = store.fresh_ids();
            element_ids[i] = ids;
            // both sources attest a matched run
            result.matched_patterns.push_back(
                store.insert(bracketed(ids, std::move(body), Provenance::Segmented, 2)));
        } else {
            const GapSpan& gap = seg.gaps[el.index];
            const IdTriple first = store.fresh_ids();
            element_ids[i] = first;
            result.unmatched_patterns.push_back(
                store.insert(bracketed(first, gap.base, Provenance::Segmented, 1)));
            const IdTriple second = store.next_member_ids(first.class_index);
            result.unmatched_patterns.push_back(
                store.insert(bracketed(second, gap.old, Provenance::Segmented, 1)));
        }
    }

    const IdTriple abstract_ids = store.fresh_ids();
    std::vector<Symbol> refs;
    for (std::size_t i = 0; i < seg.order.size(); ++i) {
        refs.push_back(id_symbol(element_ids[i].class_open));
        refs.push_back(id_symbol(element_ids[i].class_close));
    }
    result.abstract_pattern =
        store.insert(bracketed(abstract_ids, std::move(refs), Provenance::Abstract, 1));
    return result;
}

std::vector<PatternId> sift(Store& store, UtilityLedger& ledger, double keep_threshold) {
    std::vector<PatternId> doomed;
    for (const auto& [pid, p] : store.patterns()) {
        if (p.provenance == Provenance::Supplied) continue;
        const auto it = ledger.entries.find(pid);
        const double acc = it == ledger.entries.end() ? 0.0 : it->second.accumulated_cd;
        const std::int64_t uses = it == ledger.entries.end() ? 0 : it->second.uses;
        const std::int64_t window_uses = it == ledger.entries.end() ? 0 : it->second.window_uses;
        const double utility = acc / static_cast<double>(std::max<std::int64_t>(1, uses));
        if (window_uses == 0 && utility < keep_threshold) doomed.push_back(pid);
    }
    for (PatternId pid : doomed) {
        store.destroy(pid);
        ledger.entries.erase(pid);
    }
    ledger.reset_window();
    return doomed;
}

} // namespace sp
