#include "actmap/mapping.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "actmap/defaults.hpp"
#include "actmap/text.hpp"

namespace actmap {

using nlohmann::json;

bool assignment_less(const FunctionAssignment& a, const FunctionAssignment& b) {
    const auto da = dimension_compact(a.dimension);
    const auto db = dimension_compact(b.dimension);
    if (da != db) return da < db;
    return compact_name(a.function) < compact_name(b.function);
}

std::string_view status_name(TurnStatus s) {
    switch (s) {
    case TurnStatus::Mapped: return "mapped";
    case TurnStatus::NeedsOverride: return "needs-override";
    case TurnStatus::Overridden: return "overridden";
    }
    return "mapped";
}

bool TextPredicate::matches(std::string_view text) const {
    const std::string lowered = to_lower(text);
    for (const auto& pat : reject) {
        if (contains_ci(lowered, pat)) return false;
    }
    if (question_mark && ends_with_question_mark(text)) return true;
    for (const auto& pat : contains) {
        if (contains_ci(lowered, pat)) return true;
    }
    return false;
}

namespace {

void sort_and_dedupe(std::vector<FunctionAssignment>& assignments) {
    std::sort(assignments.begin(), assignments.end(), assignment_less);
    assignments.erase(std::unique(assignments.begin(), assignments.end()), assignments.end());
}

} // namespace

FunctionAssignment parse_assignment_token(std::string_view token, const Taxonomy& t,
                                          std::string_view rule_id) {
    const size_t colon = token.find(':');
    if (colon == std::string_view::npos) {
        throw Error(ErrorKind::Parse,
                    "assignment '" + std::string(token) + "' is not 'Dimension:Function'");
    }
    const std::string dim_part = trim(token.substr(0, colon));
    const std::string fn_part = trim(token.substr(colon + 1));
    const auto dim = parse_dimension(dim_part);
    if (!dim) {
        throw Error(ErrorKind::Parse, "unknown dimension '" + dim_part + "'");
    }
    const CommunicativeFunction& fn = t.function(fn_part); // throws on unknown name
    if (!t.is_valid_pair(fn.name, *dim)) {
        throw Error(ErrorKind::Invalid,
                    "function '" + fn.name + "' is not valid in dimension '" +
                        std::string(dimension_display(*dim)) + "'");
    }
    return FunctionAssignment{*dim, fn.name, std::string(rule_id)};
}

// ---------------------------------------------------------------------------
// Rule table loading

namespace {

std::vector<FunctionAssignment> parse_assignment_list(const json& arr, const Taxonomy& t,
                                                      const std::string& rule_id,
                                                      const Location& loc) {
    if (!arr.is_array()) {
        throw Error(ErrorKind::Parse, loc, "'" + rule_id + "': assignments must be an array");
    }
    std::vector<FunctionAssignment> out;
    for (const auto& item : arr) {
        if (!item.is_string()) {
            throw Error(ErrorKind::Parse, loc, "'" + rule_id + "': assignment entries must be strings");
        }
        try {
            out.push_back(parse_assignment_token(item.get<std::string>(), t, rule_id));
        } catch (const Error& e) {
            throw Error(e.kind(), loc, "'" + rule_id + "': " + e.what());
        }
    }
    sort_and_dedupe(out);
    return out;
}

} // namespace

RuleTable RuleTable::load(std::istream& in, const std::string& source_name, const Taxonomy& t) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, Location{source_name, 0}, e.what());
    }
    const Location loc{source_name, 0};
    if (!doc.is_object()) throw Error(ErrorKind::Parse, loc, "rules document must be an object");

    RuleTable table;

    if (auto preds = doc.find("predicates"); preds != doc.end()) {
        if (!preds->is_array()) throw Error(ErrorKind::Parse, loc, "'predicates' must be an array");
        for (const auto& p : *preds) {
            TextPredicate pred;
            pred.name = p.value("name", std::string{});
            if (pred.name.empty()) throw Error(ErrorKind::Parse, loc, "predicate without a name");
            for (const auto& s : p.value("match_any", json::array())) {
                pred.contains.push_back(to_lower(s.get<std::string>()));
            }
            for (const auto& s : p.value("reject_any", json::array())) {
                pred.reject.push_back(to_lower(s.get<std::string>()));
            }
            pred.question_mark = p.value("question_mark", false);
            if (pred.contains.empty() && !pred.question_mark) {
                throw Error(ErrorKind::Parse, loc,
                            "predicate '" + pred.name + "' has no patterns");
            }
            if (!table.predicates_.emplace(pred.name, pred).second) {
                throw Error(ErrorKind::Parse, loc, "duplicate predicate '" + pred.name + "'");
            }
        }
    }

    auto load_side = [&](const char* side, std::map<std::string, Rule>& rules) {
        auto section = doc.find(side);
        if (section == doc.end() || !section->is_object()) {
            throw Error(ErrorKind::Parse, loc, std::string("missing '") + side + "' rule section");
        }
        for (auto it = section->begin(); it != section->end(); ++it) {
            const std::string& label = it.key();
            const json& body = it.value();
            const std::string rule_id = std::string(side) + "/" + label;
            Rule rule;
            rule.label = label;
            rule.pending = body.value("pending", false);
            if (auto assign = body.find("assign"); assign != body.end()) {
                rule.defaults = parse_assignment_list(*assign, t, rule_id, loc);
            }
            if (auto branches = body.find("branches"); branches != body.end()) {
                if (!branches->is_array()) {
                    throw Error(ErrorKind::Parse, loc, "'" + rule_id + "': branches must be an array");
                }
                for (const auto& b : *branches) {
                    Branch branch;
                    std::string branch_tag;
                    if (auto when = b.find("when"); when != b.end()) {
                        branch.guard = when->get<std::string>();
                        if (!table.predicates_.count(branch.guard)) {
                            throw Error(ErrorKind::Parse, loc,
                                        "'" + rule_id + "': unknown predicate '" + branch.guard + "'");
                        }
                        branch_tag = branch.guard;
                    } else if (auto ctx = b.find("when_context_any"); ctx != b.end()) {
                        for (const auto& l : *ctx) {
                            branch.context_labels.push_back(canon_key(l.get<std::string>()));
                        }
                        if (branch.context_labels.empty()) {
                            throw Error(ErrorKind::Parse, loc,
                                        "'" + rule_id + "': empty context guard");
                        }
                        branch_tag = "context";
                    } else {
                        throw Error(ErrorKind::Parse, loc,
                                    "'" + rule_id + "': branch needs 'when' or 'when_context_any'");
                    }
                    const std::string branch_id = rule_id + "#" + branch_tag;
                    if (auto assign = b.find("assign"); assign != b.end()) {
                        branch.add = false;
                        branch.assignments = parse_assignment_list(*assign, t, branch_id, loc);
                        if (branch.assignments.empty()) {
                            throw Error(ErrorKind::Parse, loc,
                                        "'" + branch_id + "': branch must assign at least one function");
                        }
                    } else if (auto add = b.find("add"); add != b.end()) {
                        branch.add = true;
                        branch.assignments = parse_assignment_list(*add, t, branch_id, loc);
                    } else {
                        throw Error(ErrorKind::Parse, loc,
                                    "'" + rule_id + "': branch needs 'assign' or 'add'");
                    }
                    rule.branches.push_back(std::move(branch));
                }
            }
            if (!rule.pending && rule.defaults.empty()) {
                throw Error(ErrorKind::Parse, loc,
                            "'" + rule_id + "': non-pending rule must assign at least one function");
            }
            if (rule.pending && (!rule.defaults.empty() || !rule.branches.empty())) {
                throw Error(ErrorKind::Parse, loc,
                            "'" + rule_id + "': pending rule must not assign functions");
            }
            if (!rules.emplace(canon_key(label), std::move(rule)).second) {
                throw Error(ErrorKind::Parse, loc, "duplicate rule for label '" + label + "'");
            }
        }
    };

    load_side("system", table.system_rules_);
    load_side("user", table.user_rules_);
    return table;
}

RuleTable RuleTable::load_string(std::string_view content, const std::string& source_name,
                                 const Taxonomy& t) {
    std::istringstream in{std::string(content)};
    return load(in, source_name, t);
}

RuleTable RuleTable::load_file(const std::string& path, const Taxonomy& t) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open rules file '" + path + "'");
    return load(in, path, t);
}

// ---------------------------------------------------------------------------
// Rule application

const RuleTable::Rule* RuleTable::find(const std::map<std::string, Rule>& rules,
                                       std::string_view label) const {
    auto it = rules.find(canon_key(label));
    return it == rules.end() ? nullptr : &it->second;
}

MapOutcome RuleTable::apply(const Rule& rule, std::string_view side, std::string_view text,
                            const std::optional<std::string>& context_label) const {
    if (rule.pending) return MapOutcome{true, {}};

    // Branches are evaluated in file order; the first match wins.
    for (const auto& branch : rule.branches) {
        bool hit = false;
        if (!branch.guard.empty()) {
            hit = predicates_.at(branch.guard).matches(text);
        } else if (context_label) {
            const std::string key = canon_key(*context_label);
            hit = std::find(branch.context_labels.begin(), branch.context_labels.end(), key) !=
                  branch.context_labels.end();
        }
        if (!hit) continue;
        std::vector<FunctionAssignment> out = branch.assignments;
        if (branch.add) {
            out.insert(out.end(), rule.defaults.begin(), rule.defaults.end());
            sort_and_dedupe(out);
        }
        return MapOutcome{false, std::move(out)};
    }
    (void)side;
    return MapOutcome{false, rule.defaults};
}

std::vector<FunctionAssignment> RuleTable::map_system_label(std::string_view label,
                                                            std::string_view text) const {
    const Rule* rule = find(system_rules_, label);
    if (!rule) {
        throw Error(ErrorKind::Invalid, "no rule for system label '" + std::string(label) + "'");
    }
    return apply(*rule, "system", text, std::nullopt).assignments;
}

MapOutcome RuleTable::map_user_label(std::string_view label, std::string_view text,
                                     const std::optional<std::string>& context_label) const {
    const Rule* rule = find(user_rules_, label);
    if (!rule) {
        throw Error(ErrorKind::Invalid, "no rule for user label '" + std::string(label) + "'");
    }
    return apply(*rule, "user", text, context_label);
}

bool RuleTable::has_system_rule(std::string_view label) const {
    return find(system_rules_, label) != nullptr;
}

bool RuleTable::has_user_rule(std::string_view label) const {
    return find(user_rules_, label) != nullptr;
}

const TextPredicate* RuleTable::predicate(std::string_view name) const {
    auto it = predicates_.find(std::string(name));
    return it == predicates_.end() ? nullptr : &it->second;
}

std::vector<std::string> RuleTable::check(const Taxonomy& t,
                                          const std::vector<std::string>& system_labels,
                                          const std::vector<std::string>& user_labels) const {
    std::vector<std::string> findings;

    auto check_side = [&](const char* side, const std::map<std::string, Rule>& rules,
                          const std::vector<std::string>& labels) {
        std::set<std::string> expected;
        for (const auto& label : labels) {
            expected.insert(canon_key(label));
            if (!rules.count(canon_key(label))) {
                findings.push_back(std::string(side) + " label '" + label + "' has no rule");
            }
        }
        for (const auto& [key, rule] : rules) {
            if (!expected.count(key)) {
                findings.push_back(std::string(side) + " rule '" + rule.label +
                                   "' targets a label outside the tag set");
            }
            auto check_pairs = [&](const std::vector<FunctionAssignment>& assignments,
                                   const std::string& what) {
                for (const auto& a : assignments) {
                    if (!t.contains(a.function)) {
                        findings.push_back(what + ": unknown function '" + a.function + "'");
                    } else if (!t.is_valid_pair(a.function, a.dimension)) {
                        findings.push_back(what + ": function '" + a.function +
                                           "' is not valid in dimension '" +
                                           std::string(dimension_display(a.dimension)) + "'");
                    }
                }
            };
            check_pairs(rule.defaults, std::string(side) + " rule '" + rule.label + "'");
            for (size_t i = 0; i < rule.branches.size(); ++i) {
                check_pairs(rule.branches[i].assignments,
                            std::string(side) + " rule '" + rule.label + "' branch " +
                                std::to_string(i + 1));
            }
        }
    };

    check_side("system", system_rules_, system_labels);
    check_side("user", user_rules_, user_labels);
    return findings;
}

// ---------------------------------------------------------------------------
// Bundled-pack guard predicates

namespace {

const TextPredicate& default_predicate(std::string_view name) {
    const TextPredicate* p = defaults::rule_table().predicate(name);
    if (!p) {
        throw Error(ErrorKind::Invalid,
                    "bundled rules define no predicate '" + std::string(name) + "'");
    }
    return *p;
}

} // namespace

bool detect_promise(std::string_view text) {
    return default_predicate("promise").matches(text);
}

bool detect_keys_instruction(std::string_view text) {
    return default_predicate("keys_instruction").matches(text);
}

bool detect_different_point_request(std::string_view text) {
    return default_predicate("different_point").matches(text);
}

bool detect_assertive_shorter(std::string_view text) {
    return default_predicate("assertive_shorter").matches(text);
}

SentenceForm classify_question_form(std::string_view text) {
    return default_predicate("question_form").matches(text) ? SentenceForm::Question
                                                            : SentenceForm::Statement;
}

// ---------------------------------------------------------------------------
// Overrides

std::vector<OverrideEntry> load_overrides(std::istream& in, const std::string& source_name,
                                          const Taxonomy& t) {
    std::vector<OverrideEntry> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const Location loc{source_name, line_no};
        json rec;
        try {
            rec = json::parse(line);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::Parse, loc, std::string("bad override record: ") + e.what());
        }
        OverrideEntry entry;
        if (!rec.contains("dialog_id") || !rec["dialog_id"].is_string()) {
            throw Error(ErrorKind::Parse, loc, "override needs a string 'dialog_id'");
        }
        entry.dialog_id = rec["dialog_id"].get<std::string>();
        if (!rec.contains("turn_index") || !rec["turn_index"].is_number_integer()) {
            throw Error(ErrorKind::Parse, loc, "override needs an integer 'turn_index'");
        }
        entry.turn_index = rec["turn_index"].get<int>();
        if (!rec.contains("assignments") || !rec["assignments"].is_array()) {
            throw Error(ErrorKind::Parse, loc, "override needs an 'assignments' array");
        }
        for (const auto& a : rec["assignments"]) {
            try {
                entry.assignments.push_back(
                    parse_assignment_token(a.get<std::string>(), t, "override"));
            } catch (const Error& e) {
                throw Error(e.kind(), loc, e.what());
            }
        }
        sort_and_dedupe(entry.assignments);
        entry.note = rec.value("note", std::string{});
        out.push_back(std::move(entry));
    }
    return out;
}

std::vector<OverrideEntry> load_overrides_file(const std::string& path, const Taxonomy& t) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open overrides file '" + path + "'");
    return load_overrides(in, path, t);
}

std::vector<AnnotatedTurn> apply_overrides(std::vector<AnnotatedTurn> turns,
                                           const std::vector<OverrideEntry>& overrides,
                                           const Taxonomy& t) {
    if (overrides.empty()) return turns;

    std::unordered_map<std::string, size_t> index;
    index.reserve(turns.size());
    for (size_t i = 0; i < turns.size(); ++i) {
        index[turns[i].turn.dialog_id + "\x1f" + std::to_string(turns[i].turn.turn_index)] = i;
    }

    for (const auto& entry : overrides) {
        auto it = index.find(entry.dialog_id + "\x1f" + std::to_string(entry.turn_index));
        if (it == index.end()) {
            throw Error(ErrorKind::Invalid,
                        "override references nonexistent turn (dialog '" + entry.dialog_id +
                            "', turn " + std::to_string(entry.turn_index) + ")");
        }
        for (const auto& a : entry.assignments) {
            if (!t.is_valid_pair(a.function, a.dimension)) {
                throw Error(ErrorKind::Invalid,
                            "override for (dialog '" + entry.dialog_id + "', turn " +
                                std::to_string(entry.turn_index) + ") carries invalid pair '" +
                                std::string(dimension_display(a.dimension)) + ":" + a.function + "'");
            }
        }
        AnnotatedTurn& turn = turns[it->second];
        turn.assignments = entry.assignments;
        for (auto& a : turn.assignments) a.rule_id = "override";
        std::sort(turn.assignments.begin(), turn.assignments.end(), assignment_less);
        turn.status = TurnStatus::Overridden;
    }
    return turns;
}

// ---------------------------------------------------------------------------
// Whole-corpus mapping

std::vector<AnnotatedTurn> map_corpus(const Corpus& c, const Taxonomy& t, const RuleTable& r,
                                      const std::vector<OverrideEntry>& overrides) {
    std::set<std::string> overridden;
    for (const auto& o : overrides) {
        overridden.insert(o.dialog_id + "\x1f" + std::to_string(o.turn_index));
    }

    std::vector<AnnotatedTurn> out;
    out.reserve(c.turn_count());
    for (const auto& dialog : c.dialogs) {
        std::optional<std::string> context; // nearest preceding system label
        for (const auto& turn : dialog.turns) {
            AnnotatedTurn at;
            at.turn = turn;
            const bool has_rule = turn.speaker == Speaker::System ? r.has_system_rule(turn.label)
                                                                  : r.has_user_rule(turn.label);
            if (!has_rule) {
                // A flagged mislabel: acceptable only when an override covers it.
                if (!overridden.count(turn.dialog_id + "\x1f" + std::to_string(turn.turn_index))) {
                    throw Error(ErrorKind::Invalid,
                                "no rule for " + std::string(speaker_name(turn.speaker)) +
                                    " label '" + turn.label + "' (dialog '" + turn.dialog_id +
                                    "', turn " + std::to_string(turn.turn_index) +
                                    ") and no override covers it");
                }
                at.status = TurnStatus::NeedsOverride;
            } else if (turn.speaker == Speaker::System) {
                at.assignments = r.map_system_label(turn.label, turn.text);
                at.status = TurnStatus::Mapped;
            } else {
                MapOutcome outcome = r.map_user_label(turn.label, turn.text, context);
                at.assignments = std::move(outcome.assignments);
                at.status = outcome.needs_override ? TurnStatus::NeedsOverride : TurnStatus::Mapped;
            }
            if (turn.speaker == Speaker::System) context = turn.label;
            out.push_back(std::move(at));
        }
    }
    return apply_overrides(std::move(out), overrides, t);
}

} // namespace actmap
