// actmap command line: convert | validate | report | check-rules | demo-corpus.
// All data goes to --output (or stdout); diagnostics and summaries go to
// stderr. Built on the public C API only.

#include <cstdio>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "actmap.h"

namespace {

struct TaxonomyDeleter { void operator()(am_taxonomy* p) const { am_taxonomy_free(p); } };
struct RulesDeleter { void operator()(am_rules* p) const { am_rules_free(p); } };
struct CorpusDeleter { void operator()(am_corpus* p) const { am_corpus_free(p); } };
struct AnnotationsDeleter { void operator()(am_annotations* p) const { am_annotations_free(p); } };
struct ReportDeleter { void operator()(am_report* p) const { am_report_free(p); } };

using TaxonomyPtr = std::unique_ptr<am_taxonomy, TaxonomyDeleter>;
using RulesPtr = std::unique_ptr<am_rules, RulesDeleter>;
using CorpusPtr = std::unique_ptr<am_corpus, CorpusDeleter>;
using AnnotationsPtr = std::unique_ptr<am_annotations, AnnotationsDeleter>;
using ReportPtr = std::unique_ptr<am_report, ReportDeleter>;

struct AmString {
    char* ptr = nullptr;
    ~AmString() { am_string_free(ptr); }
    const char* c_str() const { return ptr ? ptr : ""; }
};

// Nonzero statuses surface as CliError with the library's message attached.
struct CliError {
    std::string message;
};

void check(am_status status, const char* doing) {
    if (status != AM_OK) {
        throw CliError{std::string(doing) + ": " + am_last_error()};
    }
}

struct CommonOptions {
    std::string input;
    std::string input_format = "jsonl";
    std::string taxonomy_path;
    std::string rules_path;
    std::string overrides_path;
    bool verbose = false;

    void trace(const std::string& line) const {
        if (verbose) std::fprintf(stderr, "%s\n", line.c_str());
    }
};

void add_io_options(CLI::App* cmd, CommonOptions& opts, bool with_overrides) {
    cmd->add_option("-i,--input", opts.input, "Corpus file (canonical record schema)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--input-format", opts.input_format, "Input encoding")
        ->check(CLI::IsMember({"jsonl", "tsv"}))
        ->capture_default_str();
    cmd->add_option("--taxonomy", opts.taxonomy_path, "Taxonomy document (default: bundled)")
        ->envname("ACTMAP_TAXONOMY")
        ->check(CLI::ExistingFile);
    cmd->add_option("--rules", opts.rules_path, "Rule table (default: bundled LEGO pack)")
        ->check(CLI::ExistingFile);
    if (with_overrides) {
        cmd->add_option("--overrides", opts.overrides_path, "Override records (jsonl)")
            ->check(CLI::ExistingFile);
    }
    cmd->add_flag("-v,--verbose", opts.verbose, "Trace data sources on stderr");
}

am_input_format input_format(const std::string& name) {
    return name == "tsv" ? AM_INPUT_TSV : AM_INPUT_JSONL;
}

TaxonomyPtr load_taxonomy(const CommonOptions& opts) {
    am_taxonomy* t = nullptr;
    if (opts.taxonomy_path.empty()) {
        check(am_taxonomy_default(&t), "loading bundled taxonomy");
        opts.trace("taxonomy: <bundled>");
    } else {
        check(am_taxonomy_load(opts.taxonomy_path.c_str(), &t), "loading taxonomy");
        opts.trace("taxonomy: " + opts.taxonomy_path);
    }
    return TaxonomyPtr(t);
}

RulesPtr load_rules(const CommonOptions& opts, const am_taxonomy* t) {
    am_rules* r = nullptr;
    if (opts.rules_path.empty()) {
        check(am_rules_default(t, &r), "loading bundled rules");
        opts.trace("rules: <bundled>");
    } else {
        check(am_rules_load(t, opts.rules_path.c_str(), &r), "loading rules");
        opts.trace("rules: " + opts.rules_path);
    }
    if (!opts.overrides_path.empty()) opts.trace("overrides: " + opts.overrides_path);
    return RulesPtr(r);
}

CorpusPtr load_corpus(const CommonOptions& opts) {
    am_corpus* c = nullptr;
    check(am_corpus_parse_file(opts.input.c_str(), input_format(opts.input_format), &c),
          "parsing corpus");
    opts.trace("input: " + opts.input + " (" + std::to_string(am_corpus_dialog_count(c)) +
               " dialogs, " + std::to_string(am_corpus_turn_count(c)) + " turns)");
    return CorpusPtr(c);
}

void write_bytes(const std::string& output_path, const char* bytes, size_t len) {
    if (output_path.empty() || output_path == "-") {
        std::fwrite(bytes, 1, len, stdout);
        return;
    }
    std::FILE* f = std::fopen(output_path.c_str(), "wb");
    if (!f) throw CliError{"cannot open output file '" + output_path + "'"};
    const size_t written = std::fwrite(bytes, 1, len, f);
    const bool ok = written == len && std::fclose(f) == 0;
    if (!ok) throw CliError{"write failure on '" + output_path + "'"};
}

// ---------------------------------------------------------------------------

int run_convert(const CommonOptions& common, const std::string& output,
                const std::string& output_format, bool include_unmapped, bool pretty,
                std::string pending_out) {
    auto taxonomy = load_taxonomy(common);
    auto rules = load_rules(common, taxonomy.get());
    auto corpus = load_corpus(common);

    am_annotations* raw = nullptr;
    check(am_map(corpus.get(), taxonomy.get(), rules.get(),
                 common.overrides_path.empty() ? nullptr : common.overrides_path.c_str(), &raw),
          "mapping corpus");
    AnnotationsPtr annotations(raw);

    am_output_format fmt = AM_OUTPUT_JSONL;
    if (output_format == "diaml-xml") fmt = AM_OUTPUT_DIAML_XML;
    if (output_format == "tsv") fmt = AM_OUTPUT_TSV;

    AmString bytes;
    size_t len = 0;
    check(am_emit(annotations.get(), fmt, include_unmapped ? 1 : 0, pretty ? 1 : 0, &bytes.ptr,
                  &len),
          "emitting output");
    write_bytes(output, bytes.c_str(), len);

    const size_t pending = am_annotations_pending_count(annotations.get());
    if (pending > 0) {
        if (pending_out.empty() && !output.empty() && output != "-") {
            pending_out = output + ".pending.jsonl";
        }
        if (!pending_out.empty()) {
            AmString pending_bytes;
            check(am_annotations_pending_jsonl(annotations.get(), &pending_bytes.ptr),
                  "writing pending sidecar");
            write_bytes(pending_out, pending_bytes.c_str(), std::string(pending_bytes.c_str()).size());
            std::fprintf(stderr, "pending turns listed in %s\n", pending_out.c_str());
        }
    }

    std::fprintf(stderr, "turns=%zu mapped=%zu overridden=%zu pending=%zu\n",
                 am_annotations_turn_count(annotations.get()),
                 am_annotations_mapped_count(annotations.get()),
                 am_annotations_overridden_count(annotations.get()), pending);
    return 0;
}

int run_validate(const CommonOptions& common, const std::string& output) {
    auto corpus = load_corpus(common);
    AmString issues;
    size_t issue_count = 0;
    check(am_corpus_validate(corpus.get(), &issues.ptr, &issue_count), "validating corpus");
    write_bytes(output, issues.c_str(), std::string(issues.c_str()).size());
    std::fprintf(stderr, "dialogs=%zu turns=%zu issues=%zu\n",
                 am_corpus_dialog_count(corpus.get()), am_corpus_turn_count(corpus.get()),
                 issue_count);
    return issue_count == 0 ? 0 : 1;
}

int run_report(const CommonOptions& common, const std::string& output,
               const std::string& report_format, const std::string& denominator,
               const std::string& expected_path) {
    auto taxonomy = load_taxonomy(common);
    auto rules = load_rules(common, taxonomy.get());
    auto corpus = load_corpus(common);

    am_annotations* raw = nullptr;
    check(am_map(corpus.get(), taxonomy.get(), rules.get(),
                 common.overrides_path.empty() ? nullptr : common.overrides_path.c_str(), &raw),
          "mapping corpus");
    AnnotationsPtr annotations(raw);

    am_report* raw_report = nullptr;
    check(am_report_build(annotations.get(), &raw_report), "building report");
    ReportPtr report(raw_report);

    AmString rendered;
    check(am_report_render(report.get(),
                           report_format == "jsonl" ? AM_REPORT_JSONL : AM_REPORT_TABLE,
                           denominator == "assignments" ? AM_DENOM_ASSIGNMENTS : AM_DENOM_TURNS,
                           &rendered.ptr),
          "rendering report");
    write_bytes(output, rendered.c_str(), std::string(rendered.c_str()).size());

    if (expected_path.empty()) return 0;

    AmString verdicts;
    size_t exact_failures = 0;
    size_t failures = 0;
    check(am_report_compare_file(report.get(), expected_path.c_str(), &verdicts.ptr,
                                 &exact_failures, &failures),
          "comparing against expected counts");
    std::fputs(verdicts.c_str(), stderr);
    return exact_failures == 0 ? 0 : 1;
}

int run_check_rules(const CommonOptions& common) {
    auto taxonomy = load_taxonomy(common);
    auto rules = load_rules(common, taxonomy.get());
    AmString findings;
    size_t finding_count = 0;
    check(am_rules_check(taxonomy.get(), rules.get(), &findings.ptr, &finding_count),
          "checking rules");
    if (finding_count > 0) {
        std::fputs(findings.c_str(), stderr);
        std::fprintf(stderr, "rule table check failed: %zu finding(s)\n", finding_count);
        return 1;
    }
    std::fprintf(stderr, "rule table ok\n");
    return 0;
}

int run_demo_corpus(const std::string& output, const std::string& format) {
    am_corpus* raw = nullptr;
    check(am_corpus_reference(&raw), "building demonstration corpus");
    CorpusPtr corpus(raw);
    AmString bytes;
    size_t len = 0;
    check(am_corpus_write(corpus.get(), input_format(format), &bytes.ptr, &len),
          "serializing demonstration corpus");
    write_bytes(output, bytes.c_str(), len);
    std::fprintf(stderr, "dialogs=%zu turns=%zu\n", am_corpus_dialog_count(corpus.get()),
                 am_corpus_turn_count(corpus.get()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dialog-act label to ISO 24617-2 communicative function converter"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("actmap ") + am_version());

    CommonOptions common;
    std::string output = "-";
    std::string output_format = "jsonl";
    std::string report_format = "table";
    std::string denominator = "turns";
    std::string expected_path;
    std::string pending_out;
    std::string demo_format = "jsonl";
    bool include_unmapped = false;
    bool pretty = false;

    CLI::App* convert = app.add_subcommand("convert", "Map a corpus and write annotated output");
    add_io_options(convert, common, true);
    convert->add_option("-o,--output", output, "Output path ('-' for stdout)")
        ->capture_default_str();
    convert->add_option("--output-format", output_format, "Annotated output format")
        ->check(CLI::IsMember({"diaml-xml", "jsonl", "tsv"}))
        ->capture_default_str();
    convert->add_flag("--include-unmapped", include_unmapped,
                      "Emit needs-override turns with empty function lists");
    convert->add_flag("--pretty", pretty, "Indent diaml-xml output");
    convert->add_option("--pending-out", pending_out,
                        "Sidecar file listing turns that still need an override "
                        "(default: <output>.pending.jsonl when writing to a file)");

    CLI::App* validate = app.add_subcommand("validate", "Check corpus labels against the tag sets");
    add_io_options(validate, common, false);
    validate->add_option("-o,--output", output, "Issue list destination ('-' for stdout)")
        ->capture_default_str();

    CLI::App* report = app.add_subcommand("report", "Communicative function distribution");
    add_io_options(report, common, true);
    report->add_option("-o,--output", output, "Report destination ('-' for stdout)")
        ->capture_default_str();
    report->add_option("--format", report_format, "Report rendering")
        ->check(CLI::IsMember({"table", "jsonl"}))
        ->capture_default_str();
    report->add_option("--denominator", denominator, "Percentage denominators")
        ->check(CLI::IsMember({"turns", "assignments"}))
        ->capture_default_str();
    report->add_option("--expected", expected_path,
                       "Expected-counts file; exit is nonzero when an exact row fails")
        ->check(CLI::ExistingFile);

    CLI::App* check_rules =
        app.add_subcommand("check-rules", "Verify rule-table totality and taxonomy validity");
    check_rules->add_option("--taxonomy", common.taxonomy_path, "Taxonomy document")
        ->envname("ACTMAP_TAXONOMY")
        ->check(CLI::ExistingFile);
    check_rules->add_option("--rules", common.rules_path, "Rule table")
        ->check(CLI::ExistingFile);

    CLI::App* demo = app.add_subcommand(
        "demo-corpus", "Write the bundled demonstration corpus (canonical record schema)");
    demo->add_option("-o,--output", output, "Output path ('-' for stdout)")->capture_default_str();
    demo->add_option("--format", demo_format, "Record encoding")
        ->check(CLI::IsMember({"jsonl", "tsv"}))
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (convert->parsed()) {
            return run_convert(common, output, output_format, include_unmapped, pretty,
                               pending_out);
        }
        if (validate->parsed()) return run_validate(common, output);
        if (report->parsed()) {
            return run_report(common, output, report_format, denominator, expected_path);
        }
        if (check_rules->parsed()) return run_check_rules(common);
        if (demo->parsed()) return run_demo_corpus(output, demo_format);
    } catch (const CliError& e) {
        std::fprintf(stderr, "error: %s\n", e.message.c_str());
        return 1;
    }
    return 0;
}
