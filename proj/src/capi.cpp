#include "actmap.h"

#include <cstring>
#include <fstream>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "actmap/defaults.hpp"
#include "actmap/emitter.hpp"
#include "actmap/mapping.hpp"
#include "actmap/reference_corpus.hpp"
#include "actmap/stats.hpp"
#include "actmap/version.hpp"

using nlohmann::json;

struct am_taxonomy {
    actmap::Taxonomy value;
};
struct am_rules {
    actmap::RuleTable value;
};
struct am_corpus {
    actmap::Corpus value;
};
struct am_annotations {
    std::vector<actmap::AnnotatedTurn> turns;
};
struct am_report {
    actmap::DistributionReport value;
};

namespace {

thread_local std::string g_last_error;

am_status fail(am_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

am_status fail(const actmap::Error& e) {
    am_status code = AM_E_INTERNAL;
    switch (e.kind()) {
    case actmap::ErrorKind::Argument: code = AM_E_ARGUMENT; break;
    case actmap::ErrorKind::Io: code = AM_E_IO; break;
    case actmap::ErrorKind::Parse: code = AM_E_PARSE; break;
    case actmap::ErrorKind::Invalid: code = AM_E_INVALID; break;
    }
    return fail(code, e.what());
}

// Every entry point funnels through here so exceptions never cross the
// C boundary.
template <typename Fn>
am_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const actmap::Error& e) {
        return fail(e);
    } catch (const std::bad_alloc&) {
        return fail(AM_E_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(AM_E_INTERNAL, e.what());
    } catch (...) {
        return fail(AM_E_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

am_status require(bool ok, const char* what) {
    return ok ? AM_OK : fail(AM_E_ARGUMENT, std::string("null or invalid argument: ") + what);
}

} // namespace

extern "C" {

const char* am_version(void) { return actmap::kVersion; }

const char* am_last_error(void) { return g_last_error.c_str(); }

void am_string_free(char* s) { delete[] s; }

/* Taxonomy ---------------------------------------------------------------- */

am_status am_taxonomy_default(am_taxonomy** out) {
    if (am_status s = require(out, "out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_taxonomy{actmap::defaults::taxonomy()};
        return AM_OK;
    });
}

am_status am_taxonomy_load(const char* path, am_taxonomy** out) {
    if (am_status s = require(path && out, "path/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_taxonomy{actmap::Taxonomy::load_file(path)};
        return AM_OK;
    });
}

void am_taxonomy_free(am_taxonomy* t) { delete t; }

size_t am_taxonomy_function_count(const am_taxonomy* t) {
    return t ? t->value.function_count() : 0;
}

int am_taxonomy_is_valid_pair(const am_taxonomy* t, const char* function_name,
                              const char* dimension_name) {
    if (!t || !function_name || !dimension_name) return -1;
    const auto dim = actmap::parse_dimension(dimension_name);
    if (!dim || !t->value.contains(function_name)) return -1;
    return t->value.is_valid_pair(function_name, *dim) ? 1 : 0;
}

/* Rules ------------------------------------------------------------------- */

am_status am_rules_default(const am_taxonomy* t, am_rules** out) {
    if (am_status s = require(t && out, "taxonomy/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_rules{actmap::RuleTable::load_string(actmap::defaults::rules_text(),
                                                           "<bundled rules>", t->value)};
        return AM_OK;
    });
}

am_status am_rules_load(const am_taxonomy* t, const char* path, am_rules** out) {
    if (am_status s = require(t && path && out, "taxonomy/path/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_rules{actmap::RuleTable::load_file(path, t->value)};
        return AM_OK;
    });
}

void am_rules_free(am_rules* r) { delete r; }

am_status am_rules_check(const am_taxonomy* t, const am_rules* r, char** findings,
                         size_t* finding_count) {
    if (am_status s = require(t && r && finding_count, "taxonomy/rules/finding_count");
        s != AM_OK) {
        return s;
    }
    return guarded([&] {
        const auto issues = r->value.check(t->value, actmap::lego::system_labels(),
                                           actmap::lego::user_labels());
        *finding_count = issues.size();
        if (findings) {
            std::string joined;
            for (const auto& issue : issues) {
                joined += issue;
                joined.push_back('\n');
            }
            *findings = dup_string(joined);
        }
        return AM_OK;
    });
}

/* Corpus ------------------------------------------------------------------ */

namespace {

actmap::RecordFormat to_record_format(am_input_format format) {
    if (format != AM_INPUT_JSONL && format != AM_INPUT_TSV) {
        throw actmap::Error(actmap::ErrorKind::Argument, "unknown input format value");
    }
    return format == AM_INPUT_JSONL ? actmap::RecordFormat::Jsonl : actmap::RecordFormat::Tsv;
}

} // namespace

am_status am_corpus_parse_file(const char* path, am_input_format format, am_corpus** out) {
    if (am_status s = require(path && out, "path/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_corpus{actmap::parse_corpus_file(path, to_record_format(format))};
        return AM_OK;
    });
}

am_status am_corpus_parse_buffer(const char* data, size_t len, am_input_format format,
                                 const char* provenance, am_corpus** out) {
    if (am_status s = require(data && out, "data/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_corpus{actmap::parse_corpus_string(
            std::string_view(data, len), to_record_format(format),
            provenance ? provenance : "<buffer>")};
        return AM_OK;
    });
}

am_status am_corpus_reference(am_corpus** out) {
    if (am_status s = require(out, "out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_corpus{actmap::refcorpus::build()};
        return AM_OK;
    });
}

void am_corpus_free(am_corpus* c) { delete c; }

size_t am_corpus_dialog_count(const am_corpus* c) { return c ? c->value.dialogs.size() : 0; }

size_t am_corpus_turn_count(const am_corpus* c) { return c ? c->value.turn_count() : 0; }

am_status am_corpus_validate(const am_corpus* c, char** issues_jsonl, size_t* issue_count) {
    if (am_status s = require(c && issue_count, "corpus/issue_count"); s != AM_OK) return s;
    return guarded([&] {
        const auto issues = actmap::validate_corpus(c->value);
        *issue_count = issues.size();
        if (issues_jsonl) {
            std::string joined;
            for (const auto& issue : issues) {
                json rec = {{"dialog_id", issue.dialog_id},
                            {"turn_index", issue.turn_index},
                            {"message", issue.message}};
                joined += rec.dump();
                joined.push_back('\n');
            }
            *issues_jsonl = dup_string(joined);
        }
        return AM_OK;
    });
}

am_status am_corpus_write(const am_corpus* c, am_input_format format, char** out_bytes,
                          size_t* out_len) {
    if (am_status s = require(c && out_bytes, "corpus/out_bytes"); s != AM_OK) return s;
    return guarded([&] {
        const std::string bytes = actmap::write_corpus(c->value, to_record_format(format));
        *out_bytes = dup_string(bytes);
        if (out_len) *out_len = bytes.size();
        return AM_OK;
    });
}

am_status am_corpus_write_file(const am_corpus* c, am_input_format format, const char* path) {
    if (am_status s = require(c && path, "corpus/path"); s != AM_OK) return s;
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw actmap::Error(actmap::ErrorKind::Io,
                                "cannot open output file '" + std::string(path) + "'");
        }
        actmap::write_corpus(c->value, to_record_format(format), out);
        out.flush();
        if (!out) {
            throw actmap::Error(actmap::ErrorKind::Io,
                                "write failure on '" + std::string(path) + "'");
        }
        return AM_OK;
    });
}

/* Mapping ----------------------------------------------------------------- */

am_status am_map(const am_corpus* c, const am_taxonomy* t, const am_rules* r,
                 const char* overrides_path, am_annotations** out) {
    if (am_status s = require(c && t && r && out, "corpus/taxonomy/rules/out"); s != AM_OK) {
        return s;
    }
    return guarded([&] {
        std::vector<actmap::OverrideEntry> overrides;
        if (overrides_path) {
            overrides = actmap::load_overrides_file(overrides_path, t->value);
        }
        *out = new am_annotations{actmap::map_corpus(c->value, t->value, r->value, overrides)};
        return AM_OK;
    });
}

void am_annotations_free(am_annotations* a) { delete a; }

size_t am_annotations_turn_count(const am_annotations* a) { return a ? a->turns.size() : 0; }

namespace {

size_t count_status(const am_annotations* a, actmap::TurnStatus status) {
    if (!a) return 0;
    size_t n = 0;
    for (const auto& t : a->turns) {
        if (t.status == status) ++n;
    }
    return n;
}

} // namespace

size_t am_annotations_mapped_count(const am_annotations* a) {
    return count_status(a, actmap::TurnStatus::Mapped);
}

size_t am_annotations_overridden_count(const am_annotations* a) {
    return count_status(a, actmap::TurnStatus::Overridden);
}

size_t am_annotations_pending_count(const am_annotations* a) {
    return count_status(a, actmap::TurnStatus::NeedsOverride);
}

am_status am_annotations_pending_jsonl(const am_annotations* a, char** out) {
    if (am_status s = require(a && out, "annotations/out"); s != AM_OK) return s;
    return guarded([&] {
        std::string joined;
        for (const auto& t : a->turns) {
            if (t.status != actmap::TurnStatus::NeedsOverride) continue;
            json rec = {{"dialog_id", t.turn.dialog_id},
                        {"turn_index", t.turn.turn_index},
                        {"speaker", std::string(actmap::speaker_name(t.turn.speaker))},
                        {"label", t.turn.label},
                        {"text", t.turn.text}};
            joined += rec.dump();
            joined.push_back('\n');
        }
        *out = dup_string(joined);
        return AM_OK;
    });
}

/* Emission ----------------------------------------------------------------- */

namespace {

actmap::EmissionOptions to_options(am_output_format format, int include_unmapped, int pretty) {
    actmap::EmissionOptions opts;
    switch (format) {
    case AM_OUTPUT_DIAML_XML: opts.format = actmap::EmitFormat::DiamlXml; break;
    case AM_OUTPUT_JSONL: opts.format = actmap::EmitFormat::Jsonl; break;
    case AM_OUTPUT_TSV: opts.format = actmap::EmitFormat::Tsv; break;
    default: throw actmap::Error(actmap::ErrorKind::Argument, "unknown output format value");
    }
    opts.include_unmapped = include_unmapped != 0;
    opts.pretty = pretty != 0;
    return opts;
}

} // namespace

am_status am_emit(const am_annotations* a, am_output_format format, int include_unmapped,
                  int pretty, char** out_bytes, size_t* out_len) {
    if (am_status s = require(a && out_bytes, "annotations/out_bytes"); s != AM_OK) return s;
    return guarded([&] {
        const std::string bytes = actmap::emit(a->turns, to_options(format, include_unmapped, pretty));
        *out_bytes = dup_string(bytes);
        if (out_len) *out_len = bytes.size();
        return AM_OK;
    });
}

am_status am_emit_file(const am_annotations* a, am_output_format format, int include_unmapped,
                       int pretty, const char* path) {
    if (am_status s = require(a && path, "annotations/path"); s != AM_OK) return s;
    return guarded([&] {
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw actmap::Error(actmap::ErrorKind::Io,
                                "cannot open output file '" + std::string(path) + "'");
        }
        actmap::emit(a->turns, to_options(format, include_unmapped, pretty), out);
        out.flush();
        if (!out) {
            throw actmap::Error(actmap::ErrorKind::Io,
                                "write failure on '" + std::string(path) + "'");
        }
        return AM_OK;
    });
}

/* Distribution report ------------------------------------------------------ */

am_status am_report_build(const am_annotations* a, am_report** out) {
    if (am_status s = require(a && out, "annotations/out"); s != AM_OK) return s;
    return guarded([&] {
        *out = new am_report{actmap::function_distribution(a->turns)};
        return AM_OK;
    });
}

void am_report_free(am_report* r) { delete r; }

am_status am_report_render(const am_report* r, am_report_format format, am_denominator denom,
                           char** out) {
    if (am_status s = require(r && out, "report/out"); s != AM_OK) return s;
    return guarded([&] {
        if (format != AM_REPORT_TABLE && format != AM_REPORT_JSONL) {
            throw actmap::Error(actmap::ErrorKind::Argument, "unknown report format value");
        }
        if (denom != AM_DENOM_TURNS && denom != AM_DENOM_ASSIGNMENTS) {
            throw actmap::Error(actmap::ErrorKind::Argument, "unknown denominator value");
        }
        const auto mode = denom == AM_DENOM_TURNS ? actmap::DenominatorMode::Turns
                                                  : actmap::DenominatorMode::Assignments;
        const std::string text = format == AM_REPORT_TABLE
                                     ? actmap::render_report_table(r->value, mode)
                                     : actmap::render_report_jsonl(r->value, mode);
        *out = dup_string(text);
        return AM_OK;
    });
}

long long am_report_count(const am_report* r, const char* scope, const char* dimension_name,
                          const char* function_name) {
    if (!r || !scope || !dimension_name || !function_name) return -1;
    const auto dim = actmap::parse_dimension(dimension_name);
    if (!dim) return -1;
    const actmap::DistributionRow* row = r->value.find(*dim, function_name);
    if (!row) return -1;
    const std::string s = scope;
    if (s == "system") return static_cast<long long>(row->system_count);
    if (s == "user") return static_cast<long long>(row->user_count);
    if (s == "all") return static_cast<long long>(row->all_count());
    return -1;
}

am_status am_report_compare_file(const am_report* r, const char* expected_path, char** verdicts,
                                 size_t* exact_failures, size_t* failures) {
    if (am_status s = require(r && expected_path, "report/expected_path"); s != AM_OK) return s;
    return guarded([&] {
        const auto expected = actmap::ExpectedCounts::load_file(expected_path);
        const auto result = actmap::compare_report(r->value, expected);
        if (verdicts) *verdicts = dup_string(actmap::render_comparison(result));
        if (exact_failures) *exact_failures = result.exact_failures;
        if (failures) *failures = result.failures;
        return AM_OK;
    });
}

} // extern "C"
