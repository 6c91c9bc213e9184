#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "actmap/corpus.hpp"
#include "actmap/taxonomy.hpp"

namespace actmap {

struct FunctionAssignment {
    Dimension dimension = Dimension::Task;
    std::string function; // taxonomy display name
    std::string rule_id;  // "system/<label>", "system/<label>#<guard>", or "override"

    friend bool operator==(const FunctionAssignment& a, const FunctionAssignment& b) {
        return a.dimension == b.dimension && a.function == b.function;
    }
};

// Stable output order: lexicographic by (dimension, function) compact names.
bool assignment_less(const FunctionAssignment& a, const FunctionAssignment& b);

enum class TurnStatus { Mapped, NeedsOverride, Overridden };

std::string_view status_name(TurnStatus s); // "mapped" / "needs-override" / "overridden"

struct AnnotatedTurn {
    Turn turn;
    std::vector<FunctionAssignment> assignments; // sorted, one per (dimension, function)
    TurnStatus status = TurnStatus::Mapped;
};

struct OverrideEntry {
    std::string dialog_id;
    int turn_index = 0;
    std::vector<FunctionAssignment> assignments; // may be empty: confirmed no-function turn
    std::string note;
};

// Case-insensitive text predicate: any `contains` entry matches, none of the
// `reject` entries do, or (when enabled) the text ends with '?'.
struct TextPredicate {
    std::string name;
    std::vector<std::string> contains;
    std::vector<std::string> reject;
    bool question_mark = false;

    bool matches(std::string_view text) const;
};

struct MapOutcome {
    bool needs_override = false;
    std::vector<FunctionAssignment> assignments;
};

// The per-label mapping rules plus their guard pattern lists, loaded from a
// JSON document and validated against a Taxonomy. Immutable after load.
class RuleTable {
public:
    static RuleTable load(std::istream& in, const std::string& source_name, const Taxonomy& t);
    static RuleTable load_string(std::string_view content, const std::string& source_name,
                                 const Taxonomy& t);
    static RuleTable load_file(const std::string& path, const Taxonomy& t);

    // Deterministic in (label, text). Throws on labels without a rule.
    std::vector<FunctionAssignment> map_system_label(std::string_view label,
                                                     std::string_view text) const;

    // `context_label` is the label of the nearest preceding system turn in the
    // same dialog, absent for dialog-initial user turns.
    MapOutcome map_user_label(std::string_view label, std::string_view text,
                              const std::optional<std::string>& context_label) const;

    bool has_system_rule(std::string_view label) const;
    bool has_user_rule(std::string_view label) const;

    const TextPredicate* predicate(std::string_view name) const;

    // Totality and validity check against the given tag sets: every label has
    // a rule, no rule targets an unknown label, every assignment is a valid
    // (dimension, function) pair. Returns human-readable findings.
    std::vector<std::string> check(const Taxonomy& t,
                                   const std::vector<std::string>& system_labels,
                                   const std::vector<std::string>& user_labels) const;

private:
    struct Branch {
        std::string guard;                       // predicate name; empty for context guards
        std::vector<std::string> context_labels; // canon keys
        bool add = false;                        // true: extend default; false: replace
        std::vector<FunctionAssignment> assignments;
    };

    struct Rule {
        std::string label;
        bool pending = false;
        std::vector<FunctionAssignment> defaults;
        std::vector<Branch> branches;
    };

    MapOutcome apply(const Rule& rule, std::string_view side, std::string_view text,
                     const std::optional<std::string>& context_label) const;
    const Rule* find(const std::map<std::string, Rule>& rules, std::string_view label) const;

    std::map<std::string, Rule> system_rules_; // key: canon_key(label)
    std::map<std::string, Rule> user_rules_;
    std::map<std::string, TextPredicate> predicates_;
};

// Guard predicates of the bundled rule pack, exposed directly. Each wraps the
// corresponding pattern list from the default rules document.
bool detect_promise(std::string_view text);
bool detect_keys_instruction(std::string_view text);
bool detect_different_point_request(std::string_view text);
bool detect_assertive_shorter(std::string_view text);

enum class SentenceForm { Question, Statement };
SentenceForm classify_question_form(std::string_view text);

// Override file: one JSON record per line with dialog_id, turn_index,
// assignments (list of "Dimension:Function" tokens, possibly empty), note.
std::vector<OverrideEntry> load_overrides(std::istream& in, const std::string& source_name,
                                          const Taxonomy& t);
std::vector<OverrideEntry> load_overrides_file(const std::string& path, const Taxonomy& t);

// Replaces the assignment sets of referenced turns (status -> Overridden).
// Unreferenced turns pass through. Throws when an override references a turn
// that does not exist or carries an invalid (dimension, function) pair.
std::vector<AnnotatedTurn> apply_overrides(std::vector<AnnotatedTurn> turns,
                                           const std::vector<OverrideEntry>& overrides,
                                           const Taxonomy& t);

// Per-turn rule application over the whole corpus followed by overrides.
// Output order: dialogs in corpus order, turns by turn_index. A turn whose
// label has no rule is an error unless an override covers it.
std::vector<AnnotatedTurn> map_corpus(const Corpus& c, const Taxonomy& t, const RuleTable& r,
                                      const std::vector<OverrideEntry>& overrides = {});

// Parses "Dimension:Function" (any rendering of either name); validates the
// function against the taxonomy and the pair against is_valid_pair.
FunctionAssignment parse_assignment_token(std::string_view token, const Taxonomy& t,
                                          std::string_view rule_id);

} // namespace actmap
