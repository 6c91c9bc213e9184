#include "actmap/emitter.hpp"

#include <ostream>
#include <sstream>

#include <json.hpp>

#include "actmap/text.hpp"

namespace actmap {

using nlohmann::json;

std::string assignment_token(const FunctionAssignment& a) {
    return std::string(dimension_compact(a.dimension)) + ":" + compact_name(a.function);
}

namespace {

bool emitted(const AnnotatedTurn& t, const EmissionOptions& opts) {
    return opts.include_unmapped || t.status != TurnStatus::NeedsOverride;
}

std::string xml_escape(std::string_view s, bool attribute) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"':
            if (attribute) { out += "&quot;"; break; }
            [[fallthrough]];
        default: out.push_back(c);
        }
    }
    return out;
}

void emit_diaml(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts,
                std::ostream& out) {
    const char* nl = opts.pretty ? "\n" : "";
    const char* ind1 = opts.pretty ? "  " : "";
    const char* ind2 = opts.pretty ? "    " : "";
    const char* ind3 = opts.pretty ? "      " : "";

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>" << nl;
    out << "<diaml>" << nl;

    std::string open_dialog;
    bool any_dialog = false;
    auto close_dialog = [&]() {
        if (any_dialog) out << ind1 << "</dialogue>" << nl;
    };

    for (const auto& t : turns) {
        if (!emitted(t, opts)) continue;
        if (!any_dialog || t.turn.dialog_id != open_dialog) {
            close_dialog();
            open_dialog = t.turn.dialog_id;
            any_dialog = true;
            out << ind1 << "<dialogue id=\"" << xml_escape(open_dialog, true) << "\">" << nl;
        }
        const std::string fs_id = t.turn.dialog_id + ":fs" + std::to_string(t.turn.turn_index);
        out << ind2 << "<turn id=\"" << xml_escape(t.turn.dialog_id, true) << ":t"
            << t.turn.turn_index << "\" speaker=\"" << speaker_name(t.turn.speaker)
            << "\" label=\"" << xml_escape(t.turn.label, true) << "\" status=\""
            << status_name(t.status) << "\">" << nl;
        out << ind3 << "<functionalSegment id=\"" << xml_escape(fs_id, true) << "\">"
            << xml_escape(t.turn.text, false) << "</functionalSegment>" << nl;
        for (const auto& a : t.assignments) {
            out << ind3 << "<dialogueAct sender=\"" << speaker_name(t.turn.speaker)
                << "\" dimension=\"" << dimension_xml(a.dimension)
                << "\" communicativeFunction=\"" << camel_case(a.function) << "\" target=\"#"
                << xml_escape(fs_id, true) << "\"/>" << nl;
        }
        out << ind2 << "</turn>" << nl;
    }
    close_dialog();
    out << "</diaml>\n";
}

void emit_jsonl(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts,
                std::ostream& out) {
    for (const auto& t : turns) {
        if (!emitted(t, opts)) continue;
        json rec;
        rec["dialog_id"] = t.turn.dialog_id;
        rec["turn_index"] = t.turn.turn_index;
        rec["speaker"] = speaker_name(t.turn.speaker);
        rec["label"] = t.turn.label;
        rec["text"] = t.turn.text;
        rec["status"] = status_name(t.status);
        json assignments = json::array();
        for (const auto& a : t.assignments) {
            assignments.push_back({{"dimension", std::string(dimension_compact(a.dimension))},
                                   {"function", compact_name(a.function)},
                                   {"rule", a.rule_id}});
        }
        rec["assignments"] = std::move(assignments);
        out << rec.dump() << "\n";
    }
}

std::string tsv_field(const std::string& value, const char* what) {
    if (value.find('\t') != std::string::npos || value.find('\n') != std::string::npos ||
        value.find('\r') != std::string::npos) {
        throw Error(ErrorKind::Invalid,
                    std::string(what) + " contains a tab or newline and cannot be written as TSV");
    }
    return value;
}

void emit_tsv(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts,
              std::ostream& out) {
    out << "dialog_id\tturn_index\tspeaker\tlabel\ttext\tassignments\tstatus\n";
    for (const auto& t : turns) {
        if (!emitted(t, opts)) continue;
        std::string joined;
        for (const auto& a : t.assignments) {
            if (!joined.empty()) joined.push_back(';');
            joined += assignment_token(a);
        }
        out << tsv_field(t.turn.dialog_id, "dialog_id") << '\t' << t.turn.turn_index << '\t'
            << speaker_name(t.turn.speaker) << '\t' << tsv_field(t.turn.label, "label") << '\t'
            << tsv_field(t.turn.text, "text") << '\t' << joined << '\t' << status_name(t.status)
            << "\n";
    }
}

} // namespace

void emit(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts,
          std::ostream& out) {
    if (opts.pretty && opts.format != EmitFormat::DiamlXml) {
        throw Error(ErrorKind::Argument, "pretty output is only available for diaml-xml");
    }
    switch (opts.format) {
    case EmitFormat::DiamlXml: emit_diaml(turns, opts, out); break;
    case EmitFormat::Jsonl: emit_jsonl(turns, opts, out); break;
    case EmitFormat::Tsv: emit_tsv(turns, opts, out); break;
    }
    if (!out) throw Error(ErrorKind::Io, "write failure while emitting output");
}

std::string emit(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts) {
    std::ostringstream out;
    emit(turns, opts, out);
    return out.str();
}

} // namespace actmap
