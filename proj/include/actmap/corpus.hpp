#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "actmap/error.hpp"

namespace actmap {

enum class Speaker { System, User };

std::string_view speaker_name(Speaker s); // "system" / "user"

struct Turn {
    std::string dialog_id;
    int turn_index = 0;
    Speaker speaker = Speaker::System;
    std::string label; // original tag-set label, verbatim
    std::string text;  // transcript, verbatim (may be empty)
};

struct Dialog {
    std::string dialog_id;
    std::vector<Turn> turns; // sorted ascending by turn_index
};

struct Corpus {
    std::vector<Dialog> dialogs; // dialog_id unique; first-appearance order
    std::string provenance;

    size_t turn_count() const;
    const Turn* find_turn(std::string_view dialog_id, int turn_index) const;
};

enum class RecordFormat { Jsonl, Tsv };

// One record per input line: dialog_id, turn_index, speaker, label, text.
// The TSV encoding requires the exact header row and forbids embedded tabs
// (text is the last field). Ordering within a dialog is recovered from
// turn_index, not stream order. Errors carry the line number.
Corpus parse_corpus(std::istream& in, RecordFormat format, const std::string& source_name);
Corpus parse_corpus_file(const std::string& path, RecordFormat format);
Corpus parse_corpus_string(std::string_view content, RecordFormat format,
                           const std::string& source_name);

// Serializes a corpus back to the canonical record schema, suitable for
// parse_corpus. Deterministic; dialogs in corpus order, turns by turn_index.
std::string write_corpus(const Corpus& c, RecordFormat format);
void write_corpus(const Corpus& c, RecordFormat format, std::ostream& out);

struct ValidationIssue {
    std::string dialog_id;
    int turn_index = 0;
    std::string message;
};

// Per-turn label checks against the given tag sets. Never aborts; an empty
// result means every turn is mappable without overrides.
std::vector<ValidationIssue> validate_corpus(const Corpus& c,
                                             const std::vector<std::string>& system_labels,
                                             const std::vector<std::string>& user_labels);

// Same, against the bundled LEGO tag sets.
std::vector<ValidationIssue> validate_corpus(const Corpus& c);

// Counts of each original label per speaker side.
std::map<std::pair<Speaker, std::string>, size_t> label_histogram(const Corpus& c);

namespace lego {

struct LabelCount {
    std::string_view label;
    size_t count; // occurrences in the annotated LEGO release
};

// The two domain-dependent LEGO tag sets with their published per-label
// turn counts (9083 system turns, 5188 user turns).
const std::vector<LabelCount>& system_label_counts();
const std::vector<LabelCount>& user_label_counts();

std::vector<std::string> system_labels();
std::vector<std::string> user_labels();

bool is_system_label(std::string_view label);
bool is_user_label(std::string_view label);

inline constexpr std::string_view kPendingLabel = "Unqualified / Unrecognized";

} // namespace lego

} // namespace actmap
