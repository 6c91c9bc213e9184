// Exercises the shared-library surface end to end: taxonomy and rules
// loading, corpus parsing, mapping with overrides, emission, reporting,
// and the error paths.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include "actmap.h"

namespace {

struct Fixture {
    am_taxonomy* taxonomy = nullptr;
    am_rules* rules = nullptr;

    Fixture() {
        REQUIRE(am_taxonomy_default(&taxonomy) == AM_OK);
        REQUIRE(am_rules_default(taxonomy, &rules) == AM_OK);
    }
    ~Fixture() {
        am_rules_free(rules);
        am_taxonomy_free(taxonomy);
    }
};

const char* kTinyCorpus =
    "{\"dialog_id\":\"d1\",\"turn_index\":0,\"speaker\":\"system\",\"label\":\"Greeting\","
    "\"text\":\"Welcome to the CMU Let's Go bus information system.\"}\n"
    "{\"dialog_id\":\"d1\",\"turn_index\":1,\"speaker\":\"user\",\"label\":\"Confirm\","
    "\"text\":\"YES\"}\n"
    "{\"dialog_id\":\"d1\",\"turn_index\":2,\"speaker\":\"user\",\"label\":\"Unqualified / "
    "Unrecognized\",\"text\":\"THE\"}\n";

am_corpus* parse_tiny() {
    am_corpus* c = nullptr;
    REQUIRE(am_corpus_parse_buffer(kTinyCorpus, std::strlen(kTinyCorpus), AM_INPUT_JSONL,
                                   "<tiny>", &c) == AM_OK);
    return c;
}

} // namespace

TEST_CASE("version and argument guards") {
    CHECK(std::string(am_version()) == "0.1.0");
    CHECK(am_taxonomy_default(nullptr) == AM_E_ARGUMENT);
    CHECK(std::string(am_last_error()).find("null") != std::string::npos);
    CHECK(am_corpus_parse_file(nullptr, AM_INPUT_JSONL, nullptr) == AM_E_ARGUMENT);
    CHECK(am_taxonomy_function_count(nullptr) == 0);
}

TEST_CASE("io errors carry a message") {
    am_taxonomy* t = nullptr;
    CHECK(am_taxonomy_load("/no/such/file.txt", &t) == AM_E_IO);
    CHECK(std::string(am_last_error()).find("/no/such/file.txt") != std::string::npos);

    am_corpus* c = nullptr;
    CHECK(am_corpus_parse_file("/no/such/corpus.jsonl", AM_INPUT_JSONL, &c) == AM_E_IO);
}

TEST_CASE("parse errors carry the location") {
    am_corpus* c = nullptr;
    const char* bad = "{\"dialog_id\":\"d1\"}\n";
    CHECK(am_corpus_parse_buffer(bad, std::strlen(bad), AM_INPUT_JSONL, "bad.jsonl", &c) ==
          AM_E_PARSE);
    CHECK(std::string(am_last_error()).find("bad.jsonl:1") != std::string::npos);
}

TEST_CASE("taxonomy queries") {
    Fixture fx;
    CHECK(am_taxonomy_function_count(fx.taxonomy) > 20);
    CHECK(am_taxonomy_is_valid_pair(fx.taxonomy, "Inform", "Task") == 1);
    CHECK(am_taxonomy_is_valid_pair(fx.taxonomy, "Pausing", "Task") == 0);
    CHECK(am_taxonomy_is_valid_pair(fx.taxonomy, "Pausing", "Time Management") == 1);
    CHECK(am_taxonomy_is_valid_pair(fx.taxonomy, "No Such Function", "Task") == -1);
    CHECK(am_taxonomy_is_valid_pair(fx.taxonomy, "Inform", "No Such Dimension") == -1);
}

TEST_CASE("bundled rules check clean") {
    Fixture fx;
    char* findings = nullptr;
    size_t count = 123;
    REQUIRE(am_rules_check(fx.taxonomy, fx.rules, &findings, &count) == AM_OK);
    CHECK(count == 0);
    CHECK(std::string(findings).empty());
    am_string_free(findings);
}

TEST_CASE("full pipeline through the C surface") {
    Fixture fx;
    am_corpus* corpus = parse_tiny();
    CHECK(am_corpus_dialog_count(corpus) == 1);
    CHECK(am_corpus_turn_count(corpus) == 3);

    char* issues = nullptr;
    size_t issue_count = 99;
    REQUIRE(am_corpus_validate(corpus, &issues, &issue_count) == AM_OK);
    CHECK(issue_count == 0);
    am_string_free(issues);

    am_annotations* annotations = nullptr;
    REQUIRE(am_map(corpus, fx.taxonomy, fx.rules, nullptr, &annotations) == AM_OK);
    CHECK(am_annotations_turn_count(annotations) == 3);
    CHECK(am_annotations_mapped_count(annotations) == 2);
    CHECK(am_annotations_pending_count(annotations) == 1);
    CHECK(am_annotations_overridden_count(annotations) == 0);

    char* pending = nullptr;
    REQUIRE(am_annotations_pending_jsonl(annotations, &pending) == AM_OK);
    CHECK(std::string(pending).find("\"turn_index\":2") != std::string::npos);
    am_string_free(pending);

    char* bytes = nullptr;
    size_t len = 0;
    REQUIRE(am_emit(annotations, AM_OUTPUT_TSV, 1, 0, &bytes, &len) == AM_OK);
    const std::string tsv(bytes, len);
    CHECK(tsv.find("Task:Confirm") != std::string::npos);
    CHECK(tsv.find("needs-override") != std::string::npos);
    am_string_free(bytes);

    am_report* report = nullptr;
    REQUIRE(am_report_build(annotations, &report) == AM_OK);
    CHECK(am_report_count(report, "system", "Discourse Structuring", "Opening") == 1);
    CHECK(am_report_count(report, "user", "Task", "Confirm") == 1);
    CHECK(am_report_count(report, "all", "Task", "Confirm") == 1);
    CHECK(am_report_count(report, "user", "Task", "Disconfirm") == -1); // row absent
    CHECK(am_report_count(report, "nowhere", "Task", "Confirm") == -1);

    char* rendered = nullptr;
    REQUIRE(am_report_render(report, AM_REPORT_TABLE, AM_DENOM_TURNS, &rendered) == AM_OK);
    CHECK(std::string(rendered).find("Opening") != std::string::npos);
    am_string_free(rendered);

    am_report_free(report);
    am_annotations_free(annotations);
    am_corpus_free(corpus);
}

TEST_CASE("emit rejects invalid option combinations") {
    Fixture fx;
    am_corpus* corpus = parse_tiny();
    am_annotations* annotations = nullptr;
    REQUIRE(am_map(corpus, fx.taxonomy, fx.rules, nullptr, &annotations) == AM_OK);

    char* bytes = nullptr;
    CHECK(am_emit(annotations, AM_OUTPUT_JSONL, 0, 1, &bytes, nullptr) == AM_E_ARGUMENT);
    CHECK(std::string(am_last_error()).find("pretty") != std::string::npos);

    am_annotations_free(annotations);
    am_corpus_free(corpus);
}

TEST_CASE("reference corpus round-trips through corpus writing") {
    am_corpus* corpus = nullptr;
    REQUIRE(am_corpus_reference(&corpus) == AM_OK);
    CHECK(am_corpus_turn_count(corpus) == 14271);

    char* bytes = nullptr;
    size_t len = 0;
    REQUIRE(am_corpus_write(corpus, AM_INPUT_JSONL, &bytes, &len) == AM_OK);
    am_corpus* again = nullptr;
    REQUIRE(am_corpus_parse_buffer(bytes, len, AM_INPUT_JSONL, "<copy>", &again) == AM_OK);
    CHECK(am_corpus_turn_count(again) == 14271);
    CHECK(am_corpus_dialog_count(again) == am_corpus_dialog_count(corpus));
    am_string_free(bytes);
    am_corpus_free(again);
    am_corpus_free(corpus);
}

TEST_CASE("mapping surfaces invalid overrides as AM_E_INVALID") {
    Fixture fx;
    am_corpus* corpus = parse_tiny();
    am_annotations* annotations = nullptr;
    CHECK(am_map(corpus, fx.taxonomy, fx.rules, "/no/such/overrides.jsonl", &annotations) ==
          AM_E_IO);
    am_corpus_free(corpus);
}
