#include "actmap/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "actmap/text.hpp"

namespace actmap {

using nlohmann::json;

std::string_view speaker_name(Speaker s) {
    return s == Speaker::System ? "system" : "user";
}

size_t Corpus::turn_count() const {
    size_t n = 0;
    for (const auto& d : dialogs) n += d.turns.size();
    return n;
}

const Turn* Corpus::find_turn(std::string_view dialog_id, int turn_index) const {
    for (const auto& d : dialogs) {
        if (d.dialog_id != dialog_id) continue;
        for (const auto& t : d.turns) {
            if (t.turn_index == turn_index) return &t;
        }
        return nullptr;
    }
    return nullptr;
}

namespace {

struct CorpusBuilder {
    explicit CorpusBuilder(std::string provenance) {
        corpus.provenance = std::move(provenance);
    }

    void add(Turn turn, const Location& loc) {
        auto [it, inserted] = dialog_index.try_emplace(turn.dialog_id, corpus.dialogs.size());
        if (inserted) corpus.dialogs.push_back(Dialog{turn.dialog_id, {}});
        Dialog& dialog = corpus.dialogs[it->second];
        if (!seen_indexes[turn.dialog_id].insert(turn.turn_index).second) {
            throw Error(ErrorKind::Parse, loc,
                        "duplicate turn_index " + std::to_string(turn.turn_index) +
                            " in dialog '" + turn.dialog_id + "'");
        }
        dialog.turns.push_back(std::move(turn));
    }

    Corpus finish() {
        for (auto& d : corpus.dialogs) {
            std::sort(d.turns.begin(), d.turns.end(),
                      [](const Turn& a, const Turn& b) { return a.turn_index < b.turn_index; });
        }
        return std::move(corpus);
    }

    Corpus corpus;
    std::unordered_map<std::string, size_t> dialog_index;
    std::unordered_map<std::string, std::set<int>> seen_indexes;
};

Speaker parse_speaker(const std::string& value, const Location& loc) {
    if (value == "system") return Speaker::System;
    if (value == "user") return Speaker::User;
    throw Error(ErrorKind::Parse, loc,
                "unknown speaker '" + value + "' (expected 'system' or 'user')");
}

int parse_turn_index(const std::string& value, const Location& loc) {
    int idx = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), idx);
    if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw Error(ErrorKind::Parse, loc, "turn_index '" + value + "' is not an integer");
    }
    if (idx < 0) {
        throw Error(ErrorKind::Parse, loc, "turn_index must be non-negative, got " + value);
    }
    return idx;
}

Turn parse_jsonl_record(const std::string& line, const Location& loc) {
    json rec;
    try {
        rec = json::parse(line);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, loc, std::string("bad record: ") + e.what());
    }
    if (!rec.is_object()) throw Error(ErrorKind::Parse, loc, "record is not an object");

    auto field = [&](const char* name) -> const json& {
        auto it = rec.find(name);
        if (it == rec.end()) {
            throw Error(ErrorKind::Parse, loc, std::string("missing required field '") + name + "'");
        }
        return *it;
    };
    auto str_field = [&](const char* name) {
        const json& v = field(name);
        if (!v.is_string()) {
            throw Error(ErrorKind::Parse, loc, std::string("field '") + name + "' must be a string");
        }
        return v.get<std::string>();
    };

    Turn turn;
    turn.dialog_id = str_field("dialog_id");
    const json& idx = field("turn_index");
    if (idx.is_number_integer()) {
        auto v = idx.get<long long>();
        if (v < 0) throw Error(ErrorKind::Parse, loc, "turn_index must be non-negative");
        turn.turn_index = static_cast<int>(v);
    } else if (idx.is_string()) {
        turn.turn_index = parse_turn_index(idx.get<std::string>(), loc);
    } else {
        throw Error(ErrorKind::Parse, loc, "turn_index must be an integer");
    }
    turn.speaker = parse_speaker(str_field("speaker"), loc);
    turn.label = str_field("label");
    turn.text = str_field("text");
    return turn;
}

const std::string kTsvHeader = "dialog_id\tturn_index\tspeaker\tlabel\ttext";

Turn parse_tsv_record(const std::string& line, const Location& loc) {
    std::vector<std::string> fields;
    size_t start = 0;
    while (true) {
        const size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
    if (fields.size() != 5) {
        throw Error(ErrorKind::Parse, loc,
                    "expected 5 tab-separated fields, got " + std::to_string(fields.size()) +
                        " (embedded tabs are not allowed)");
    }
    Turn turn;
    turn.dialog_id = fields[0];
    turn.turn_index = parse_turn_index(fields[1], loc);
    turn.speaker = parse_speaker(fields[2], loc);
    turn.label = fields[3];
    turn.text = fields[4];
    if (turn.dialog_id.empty()) throw Error(ErrorKind::Parse, loc, "missing required field 'dialog_id'");
    return turn;
}

} // namespace

Corpus parse_corpus(std::istream& in, RecordFormat format, const std::string& source_name) {
    CorpusBuilder builder(source_name);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const Location loc{source_name, line_no};
        if (format == RecordFormat::Tsv && !header_seen) {
            if (line != kTsvHeader) {
                throw Error(ErrorKind::Parse, loc,
                            "missing or malformed TSV header (expected '" + kTsvHeader + "')");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        Turn turn = format == RecordFormat::Jsonl ? parse_jsonl_record(line, loc)
                                                  : parse_tsv_record(line, loc);
        builder.add(std::move(turn), loc);
    }
    return builder.finish();
}

Corpus parse_corpus_file(const std::string& path, RecordFormat format) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open corpus file '" + path + "'");
    return parse_corpus(in, format, path);
}

Corpus parse_corpus_string(std::string_view content, RecordFormat format,
                           const std::string& source_name) {
    std::istringstream in{std::string(content)};
    return parse_corpus(in, format, source_name);
}

void write_corpus(const Corpus& c, RecordFormat format, std::ostream& out) {
    if (format == RecordFormat::Tsv) out << kTsvHeader << "\n";
    for (const auto& d : c.dialogs) {
        for (const auto& t : d.turns) {
            if (format == RecordFormat::Jsonl) {
                json rec = {{"dialog_id", t.dialog_id},
                            {"turn_index", t.turn_index},
                            {"speaker", std::string(speaker_name(t.speaker))},
                            {"label", t.label},
                            {"text", t.text}};
                out << rec.dump() << "\n";
            } else {
                for (const std::string* field : {&t.dialog_id, &t.label, &t.text}) {
                    if (field->find('\t') != std::string::npos ||
                        field->find('\n') != std::string::npos) {
                        throw Error(ErrorKind::Invalid,
                                    "field contains a tab or newline and cannot be written as TSV "
                                    "(dialog '" + t.dialog_id + "', turn " +
                                        std::to_string(t.turn_index) + ")");
                    }
                }
                out << t.dialog_id << '\t' << t.turn_index << '\t' << speaker_name(t.speaker)
                    << '\t' << t.label << '\t' << t.text << "\n";
            }
        }
    }
    if (!out) throw Error(ErrorKind::Io, "write failure while writing corpus");
}

std::string write_corpus(const Corpus& c, RecordFormat format) {
    std::ostringstream out;
    write_corpus(c, format, out);
    return out.str();
}

namespace {

std::set<std::string> canon_set(const std::vector<std::string>& labels) {
    std::set<std::string> out;
    for (const auto& l : labels) out.insert(canon_key(l));
    return out;
}

} // namespace

std::vector<ValidationIssue> validate_corpus(const Corpus& c,
                                             const std::vector<std::string>& system_labels,
                                             const std::vector<std::string>& user_labels) {
    const std::set<std::string> sys = canon_set(system_labels);
    const std::set<std::string> usr = canon_set(user_labels);
    std::vector<ValidationIssue> issues;
    for (const auto& d : c.dialogs) {
        for (const auto& t : d.turns) {
            if (trim(t.label).empty()) {
                issues.push_back({t.dialog_id, t.turn_index, "empty label"});
                continue;
            }
            const bool known = t.speaker == Speaker::System
                                   ? sys.count(canon_key(t.label)) > 0
                                   : usr.count(canon_key(t.label)) > 0;
            if (!known) {
                issues.push_back({t.dialog_id, t.turn_index,
                                  "label '" + t.label + "' not in " +
                                      std::string(speaker_name(t.speaker)) + " tag set"});
            }
        }
    }
    return issues;
}

std::vector<ValidationIssue> validate_corpus(const Corpus& c) {
    return validate_corpus(c, lego::system_labels(), lego::user_labels());
}

std::map<std::pair<Speaker, std::string>, size_t> label_histogram(const Corpus& c) {
    std::map<std::pair<Speaker, std::string>, size_t> hist;
    for (const auto& d : c.dialogs) {
        for (const auto& t : d.turns) {
            ++hist[{t.speaker, t.label}];
        }
    }
    return hist;
}

namespace lego {

const std::vector<LabelCount>& system_label_counts() {
    static const std::vector<LabelCount> counts = {
        {"Confirm Understood", 912},
        {"Ask Confirm Departure", 823},
        {"Ask Another Query", 728},
        {"Ask Bus", 714},
        {"Ask Confirm Time", 497},
        {"Ask Time", 493},
        {"Ask Confirm Destination", 458},
        {"Explain", 438},
        {"Ask Confirm Bus", 425},
        {"Ask Departure", 410},
        {"Deliver Result", 410},
        {"Filler", 410},
        {"Announce Querying", 364},
        {"Offer Help", 348},
        {"Greeting", 347},
        {"Ask Destination", 345},
        {"Inform No Schedule", 343},
        {"Ask Confirm With Keys", 142},
        {"Ask Confirm Neighborhood", 128},
        {"Announce Restart", 84},
        {"Inform Shorter Answer", 75},
        {"Inform Help", 67},
        {"Goodbye", 36},
        {"Disambiguate Bus Stop", 32},
        {"Inform No Route", 25},
        {"Instruct Louder", 13},
        {"Confirm Restart", 10},
        {"Instruct More Quiet", 6},
    };
    return counts;
}

const std::vector<LabelCount>& user_label_counts() {
    static const std::vector<LabelCount> counts = {
        {"Place Information", 879},
        {kPendingLabel, 783},
        {"Reject", 746},
        {"Line Information", 440},
        {"Time Information", 391},
        {"Confirm Departure", 291},
        {"Confirm Destination", 246},
        {"Confirm Time", 225},
        {"Confirm", 214},
        {"Confirm Bus", 179},
        {"Request Next Bus", 159},
        {"Reject Departure", 135},
        {"New Query", 98},
        {"Reject Time", 95},
        {"Request Previous Bus", 75},
        {"Reject Bus", 69},
        {"Reject Destination", 53},
        {"Request Help", 52},
        {"Goodbye", 29},
        {"Request Schedule", 18},
        {"Polite", 8},
        {"Inform", 3},
    };
    return counts;
}

namespace {

std::vector<std::string> names(const std::vector<LabelCount>& counts) {
    std::vector<std::string> out;
    out.reserve(counts.size());
    for (const auto& lc : counts) out.emplace_back(lc.label);
    return out;
}

bool in_set(const std::vector<LabelCount>& counts, std::string_view label) {
    const std::string key = canon_key(label);
    for (const auto& lc : counts) {
        if (canon_key(lc.label) == key) return true;
    }
    return false;
}

} // namespace

std::vector<std::string> system_labels() { return names(system_label_counts()); }
std::vector<std::string> user_labels() { return names(user_label_counts()); }

bool is_system_label(std::string_view label) { return in_set(system_label_counts(), label); }
bool is_user_label(std::string_view label) { return in_set(user_label_counts(), label); }

} // namespace lego

} // namespace actmap
