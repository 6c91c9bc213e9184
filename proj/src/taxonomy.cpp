#include "actmap/taxonomy.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include "actmap/text.hpp"

namespace actmap {

namespace {

struct DimensionInfo {
    Dimension value;
    std::string_view display;
    std::string_view compact;
};

constexpr std::array<DimensionInfo, kDimensionCount> kDimensions = {{
    {Dimension::Task, "Task", "Task"},
    {Dimension::AutoFeedback, "Auto-Feedback", "AutoFeedback"},
    {Dimension::AlloFeedback, "Allo-Feedback", "AlloFeedback"},
    {Dimension::TurnManagement, "Turn Management", "TurnManagement"},
    {Dimension::TimeManagement, "Time Management", "TimeManagement"},
    {Dimension::DiscourseStructuring, "Discourse Structuring", "DiscourseStructuring"},
    {Dimension::OwnCommunicationManagement, "Own Communication Management", "OwnCommunicationManagement"},
    {Dimension::PartnerCommunicationManagement, "Partner Communication Management", "PartnerCommunicationManagement"},
    {Dimension::SocialObligationsManagement, "Social Obligations Management", "SocialObligationsManagement"},
}};

const DimensionInfo& info(Dimension d) {
    return kDimensions[static_cast<size_t>(d)];
}

} // namespace

std::array<Dimension, kDimensionCount> all_dimensions() {
    std::array<Dimension, kDimensionCount> out{};
    for (size_t i = 0; i < kDimensions.size(); ++i) out[i] = kDimensions[i].value;
    return out;
}

std::string_view dimension_display(Dimension d) { return info(d).display; }
std::string_view dimension_compact(Dimension d) { return info(d).compact; }
std::string dimension_xml(Dimension d) { return camel_case(info(d).display); }

std::optional<Dimension> parse_dimension(std::string_view name) {
    const std::string key = canon_key(name);
    for (const auto& di : kDimensions) {
        if (key == canon_key(di.display)) return di.value;
    }
    return std::nullopt;
}

namespace {

// Parser for the taxonomy document: a restricted line-based format with two
// sections. List items start with "-"; record fields are "key: value" lines
// under the item that opened the record. '#' lines are comments.
class TaxonomyParser {
public:
    TaxonomyParser(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

    void run() {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            std::string line = trim(raw);
            if (line.empty() || line[0] == '#') continue;

            if (raw[0] != ' ' && raw[0] != '\t' && raw[0] != '-') {
                handle_top_level(line);
                continue;
            }
            if (line[0] == '-') {
                handle_list_item(trim(line.substr(1)));
                continue;
            }
            handle_field(line);
        }
        finish_record();
        check_dimensions();
    }

    std::vector<std::string> dimension_names;
    std::vector<CommunicativeFunction> functions;
    std::vector<int> function_lines;

private:
    enum class Section { None, Dimensions, Functions };

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Parse, Location{source_, line_}, msg);
    }

    static bool split_kv(std::string_view line, std::string& key, std::string& value) {
        const size_t colon = line.find(':');
        if (colon == std::string_view::npos) return false;
        key = trim(line.substr(0, colon));
        value = trim(line.substr(colon + 1));
        return true;
    }

    void handle_top_level(const std::string& line) {
        std::string key;
        std::string value;
        if (!split_kv(line, key, value)) fail("expected 'key: value' or a section header");
        finish_record();
        if (key == "dimensions") {
            if (!value.empty()) fail("section header 'dimensions:' takes no value");
            section_ = Section::Dimensions;
        } else if (key == "functions") {
            if (!value.empty()) fail("section header 'functions:' takes no value");
            section_ = Section::Functions;
            seen_functions_section_ = true;
        } else if (key == "version") {
            section_ = Section::None;
        } else {
            fail("unknown top-level key '" + key + "'");
        }
    }

    void handle_list_item(const std::string& item) {
        switch (section_) {
        case Section::None:
            fail("list item outside of a section");
        case Section::Dimensions:
            if (item.empty()) fail("empty dimension name");
            dimension_names.push_back(item);
            break;
        case Section::Functions: {
            finish_record();
            std::string key;
            std::string value;
            if (!split_kv(item, key, value) || key != "name") {
                fail("function records must start with 'name:'");
            }
            if (value.empty()) fail("empty function name");
            record_ = CommunicativeFunction{};
            record_->name = value;
            record_line_ = line_;
            record_kind_seen_ = false;
            break;
        }
        }
    }

    void handle_field(const std::string& line) {
        if (section_ != Section::Functions || !record_) {
            fail("unexpected indented line");
        }
        std::string key;
        std::string value;
        if (!split_kv(line, key, value)) fail("expected 'key: value'");
        if (key == "kind") {
            if (value == "general-purpose") {
                record_->kind = FunctionKind::GeneralPurpose;
            } else if (value == "dimension-specific") {
                record_->kind = FunctionKind::DimensionSpecific;
            } else {
                fail("kind must be 'general-purpose' or 'dimension-specific', got '" + value + "'");
            }
            record_kind_seen_ = true;
        } else if (key == "parent") {
            record_->parent = value;
        } else if (key == "dimension") {
            auto d = parse_dimension(value);
            if (!d) fail("unknown dimension '" + value + "'");
            record_->home_dimension = *d;
        } else {
            fail("unknown function field '" + key + "'");
        }
    }

    void finish_record() {
        if (!record_) return;
        line_ = record_line_; // located diagnostics point at the record start
        if (!record_kind_seen_) fail("function '" + record_->name + "' is missing 'kind'");
        if (record_->kind == FunctionKind::GeneralPurpose) {
            if (record_->home_dimension) {
                fail("general-purpose function '" + record_->name + "' must not declare a dimension");
            }
        } else {
            if (!record_->home_dimension) {
                fail("dimension-specific function '" + record_->name + "' is missing 'dimension'");
            }
            if (record_->parent) {
                fail("dimension-specific function '" + record_->name + "' must not declare a parent");
            }
            if (*record_->home_dimension == Dimension::Task) {
                fail("function '" + record_->name +
                     "' claims home dimension Task; Task carries general-purpose functions only");
            }
        }
        functions.push_back(std::move(*record_));
        function_lines.push_back(record_line_);
        record_.reset();
    }

    void check_dimensions() {
        std::set<std::string> seen;
        for (const auto& name : dimension_names) {
            if (!parse_dimension(name)) {
                throw Error(ErrorKind::Parse, Location{source_, 0},
                            "unknown dimension '" + name + "'");
            }
            if (!seen.insert(canon_key(name)).second) {
                throw Error(ErrorKind::Parse, Location{source_, 0},
                            "duplicate dimension '" + name + "'");
            }
        }
        if (seen.size() != kDimensionCount) {
            throw Error(ErrorKind::Parse, Location{source_, 0},
                        "taxonomy must declare exactly the nine ISO 24617-2 dimensions, found " +
                            std::to_string(seen.size()));
        }
        if (!seen_functions_section_) {
            throw Error(ErrorKind::Parse, Location{source_, 0}, "missing 'functions:' section");
        }
    }

    std::istream& in_;
    std::string source_;
    int line_ = 0;
    Section section_ = Section::None;
    std::optional<CommunicativeFunction> record_;
    int record_line_ = 0;
    bool record_kind_seen_ = false;
    bool seen_functions_section_ = false;
};

} // namespace

Taxonomy Taxonomy::load(std::istream& in, const std::string& source_name) {
    TaxonomyParser parser(in, source_name);
    parser.run();

    Taxonomy t;
    for (size_t i = 0; i < parser.functions.size(); ++i) {
        auto& fn = parser.functions[i];
        const std::string key = canon_key(fn.name);
        if (key.empty()) {
            throw Error(ErrorKind::Parse, Location{source_name, parser.function_lines[i]},
                        "function name has no letters or digits");
        }
        if (!t.functions_.emplace(key, fn).second) {
            throw Error(ErrorKind::Parse, Location{source_name, parser.function_lines[i]},
                        "duplicate function name '" + fn.name + "'");
        }
        t.order_.push_back(fn.name);
    }

    // Parent edges must point at known general-purpose functions and form a
    // forest; the walk below rejects unknown targets and cycles.
    for (size_t i = 0; i < parser.functions.size(); ++i) {
        const auto& fn = parser.functions[i];
        if (!fn.parent) continue;
        const Location loc{source_name, parser.function_lines[i]};
        const CommunicativeFunction* parent = t.find(*fn.parent);
        if (!parent) {
            throw Error(ErrorKind::Parse, loc,
                        "function '" + fn.name + "' names unknown parent '" + *fn.parent + "'");
        }
        if (parent->kind != FunctionKind::GeneralPurpose) {
            throw Error(ErrorKind::Parse, loc,
                        "function '" + fn.name + "' has dimension-specific parent '" + *fn.parent + "'");
        }
        const CommunicativeFunction* walk = parent;
        size_t steps = 0;
        while (walk) {
            if (canon_key(walk->name) == canon_key(fn.name) || ++steps > t.functions_.size()) {
                throw Error(ErrorKind::Parse, loc,
                            "cycle in parent edges at function '" + fn.name + "'");
            }
            walk = walk->parent ? t.find(*walk->parent) : nullptr;
        }
    }
    return t;
}

Taxonomy Taxonomy::load_string(std::string_view content, const std::string& source_name) {
    std::istringstream in{std::string(content)};
    return load(in, source_name);
}

Taxonomy Taxonomy::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open taxonomy file '" + path + "'");
    return load(in, path);
}

const CommunicativeFunction* Taxonomy::find(std::string_view function_name) const {
    auto it = functions_.find(canon_key(function_name));
    return it == functions_.end() ? nullptr : &it->second;
}

bool Taxonomy::contains(std::string_view function_name) const {
    return find(function_name) != nullptr;
}

const CommunicativeFunction& Taxonomy::function(std::string_view function_name) const {
    const CommunicativeFunction* fn = find(function_name);
    if (!fn) {
        throw Error(ErrorKind::Invalid,
                    "unknown communicative function '" + std::string(function_name) + "'");
    }
    return *fn;
}

bool Taxonomy::is_valid_pair(std::string_view function_name, Dimension d) const {
    const CommunicativeFunction& fn = function(function_name);
    if (fn.kind == FunctionKind::GeneralPurpose) return true;
    return fn.home_dimension == d;
}

std::vector<std::string> Taxonomy::ancestors(std::string_view function_name) const {
    const CommunicativeFunction* fn = &function(function_name);
    std::vector<std::string> chain;
    while (fn->parent) {
        const CommunicativeFunction* parent = find(*fn->parent);
        if (!parent) break; // load() guarantees this does not happen
        chain.push_back(parent->name);
        fn = parent;
    }
    return chain;
}

} // namespace actmap
