#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sp/encode.hpp"
#include "sp/search.hpp"

namespace sp {

enum class IngestOutcome : unsigned char { Recognized, Segmented, Stored };

struct LearnConfig {
    SearchConfig search;
    double min_coverage = 0.5; // fraction of New symbols matched before a partial match segments
    bool code_feedback = false; // experimental: re-ingest derived code patterns
};

// Bookkeeping for utility-based sifting: per-pattern accumulated cd over
// the alignments that were actually selected as best, lifetime and
// per-window use counts, and the number of ingests since the last sift.
struct UtilityLedger {
    struct Entry {
        double accumulated_cd = 0.0;
        std::int64_t uses = 0;
        std::int64_t window_uses = 0;
    };
    std::map<PatternId, Entry> entries;
    std::int64_t window = 0;

    void credit(PatternId pid, double cd);
    void reset_window();
};

struct SegmentationResult {
    std::vector<PatternId> matched_patterns;
    std::vector<PatternId> unmatched_patterns;
    PatternId abstract_pattern = 0;
};

struct IngestReport {
    IngestOutcome outcome;
    PatternId stored_pid = 0;                      // Stored outcome
    std::optional<SegmentationResult> segmentation; // Segmented outcome
    MultipleAlignment best;
};

// Unsupervised intake of one New pattern (contents symbols only):
//   - a full match of the best alignment increments every row pattern;
//   - a two-row partial match with enough coverage segments;
//   - anything else stores the New pattern verbatim inside fresh brackets.
IngestReport ingest(const Pattern& new_pattern, Store& store, UtilityLedger& ledger,
                    const LearnConfig& cfg);

// Splits a two-row partial match into matched-run patterns, same-slot
// alternative patterns and one abstract pattern, inserting all of them.
// Requires at least one matched run and gap material on both rows of every
// gap, so that either source is reconstructible by member choice.
SegmentationResult segment(const MultipleAlignment& ma, Store& store);

// Destroys learned patterns that went unused over the whole window and
// whose accumulated cd per use falls below keep_threshold. Supplied
// patterns are never destroyed. Resets the ledger window.
std::vector<PatternId> sift(Store& store, UtilityLedger& ledger, double keep_threshold);

} // namespace sp
