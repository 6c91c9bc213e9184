// Drives the installed CLI binary through its subcommands with real files,
// checking exit codes and the stdout/stderr split.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path temp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "actmap-cli-tests";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args, const std::string& env = {}) {
    static int counter = 0;
    const fs::path out_path = temp_dir() / ("stdout." + std::to_string(counter));
    const fs::path err_path = temp_dir() / ("stderr." + std::to_string(counter));
    ++counter;

    const std::string cmd = (env.empty() ? "" : env + " ") + ACTMAP_CLI_PATH + " " + args +
                            " > " + out_path.string() + " 2> " + err_path.string();
    const int raw = std::system(cmd.c_str());

    RunResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

const std::string kDataDir = std::string(ACTMAP_SOURCE_DIR) + "/data";
const std::string kExcerpt = kDataDir + "/examples/excerpt.jsonl";

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path p = temp_dir() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

} // namespace

TEST_CASE("--version prints the tool line") {
    const auto r = run_cli("--version");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("actmap 0.1.0") != std::string::npos);
}

TEST_CASE("convert maps the excerpt cleanly") {
    const fs::path out = temp_dir() / "excerpt-out.jsonl";
    const auto r = run_cli("convert --input " + kExcerpt + " --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("turns=13 mapped=13 overridden=0 pending=0") != std::string::npos);
    CHECK(r.out.empty()); // data went to the file, diagnostics to stderr

    const std::string emitted = read_file(out);
    CHECK(std::count(emitted.begin(), emitted.end(), '\n') == 13);
    CHECK(emitted.find("\"CheckQuestion\"") != std::string::npos);
    CHECK(emitted.find("\"Opening\"") != std::string::npos);
}

TEST_CASE("convert to stdout keeps data and diagnostics apart") {
    const auto r = run_cli("convert --input " + kExcerpt + " --output-format tsv");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("dialog_id\tturn_index") == 0);
    CHECK(r.err.find("turns=13") != std::string::npos);
    CHECK(r.out.find("turns=13 mapped") == std::string::npos);
}

TEST_CASE("convert writes the pending sidecar") {
    const fs::path input = write_temp(
        "pending.jsonl",
        R"({"dialog_id":"d1","turn_index":0,"speaker":"user","label":"Unqualified / Unrecognized","text":"THE"})"
        "\n");
    const fs::path out = temp_dir() / "pending-out.jsonl";
    const auto r = run_cli("convert --input " + input.string() + " --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("pending=1") != std::string::npos);
    const std::string sidecar = read_file(out.string() + ".pending.jsonl");
    CHECK(sidecar.find("\"text\":\"THE\"") != std::string::npos);
}

TEST_CASE("validate reports label issues and exits nonzero") {
    const fs::path bad = write_temp(
        "bad-corpus.jsonl",
        R"({"dialog_id":"d1","turn_index":0,"speaker":"user","label":"Ask Bus","text":"x"})"
        "\n");
    const auto r = run_cli("validate --input " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("not in user tag set") != std::string::npos);
    CHECK(r.err.find("issues=1") != std::string::npos);
}

TEST_CASE("validate on an empty file reports zero dialogs") {
    const fs::path empty = write_temp("empty.jsonl", "");
    const auto r = run_cli("validate --input " + empty.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("dialogs=0") != std::string::npos);
    CHECK(r.out.empty());
}

TEST_CASE("check-rules accepts the bundled pack") {
    const auto r = run_cli("check-rules");
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("rule table ok") != std::string::npos);
}

TEST_CASE("check-rules rejects a rule with an invalid pair") {
    const fs::path bad = write_temp("bad-rules.json", R"({
        "system": {"Ask Bus": {"assign": ["Task:Pausing"]}},
        "user": {}
    })");
    const auto r = run_cli("check-rules --rules " + bad.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("not valid in dimension") != std::string::npos);
}

TEST_CASE("check-rules flags missing labels") {
    const fs::path partial = write_temp("partial-rules.json", R"({
        "system": {"Ask Bus": {"assign": ["Task:SetQuestion"]}},
        "user": {}
    })");
    const auto r = run_cli("check-rules --rules " + partial.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("has no rule") != std::string::npos);
}

TEST_CASE("report compares against expected counts and sets the exit code") {
    const fs::path expected_ok = write_temp(
        "expected-ok.jsonl",
        R"({"scope":"system","dimension":"Discourse Structuring","function":"Opening","count":1,"compare":"exact"})"
        "\n");
    const fs::path expected_bad = write_temp(
        "expected-bad.jsonl",
        R"({"scope":"system","dimension":"Discourse Structuring","function":"Opening","count":2,"compare":"exact"})"
        "\n");
    const fs::path corpus = write_temp(
        "one-greeting.jsonl",
        R"({"dialog_id":"d1","turn_index":0,"speaker":"system","label":"Greeting","text":"Welcome to the CMU Let's Go bus information system."})"
        "\n");

    const auto ok = run_cli("report --input " + corpus.string() + " --expected " +
                            expected_ok.string());
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("Opening") != std::string::npos);
    CHECK(ok.err.find("pass") != std::string::npos);

    const auto bad = run_cli("report --input " + corpus.string() + " --expected " +
                             expected_bad.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("FAIL") != std::string::npos);

    // A tolerance miss alone does not fail the run.
    const fs::path expected_tol = write_temp(
        "expected-tol.jsonl",
        R"({"scope":"system","dimension":"Discourse Structuring","function":"Opening","count":5,"compare":"tolerance","tolerance":1})"
        "\n");
    const auto tol = run_cli("report --input " + corpus.string() + " --expected " +
                             expected_tol.string());
    CHECK(tol.exit_code == 0);
    CHECK(tol.err.find("FAIL") != std::string::npos);
}

TEST_CASE("report renders jsonl rows") {
    const auto r = run_cli("report --input " + kExcerpt + " --format jsonl");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"kind\":\"row\"") != std::string::npos);
    CHECK(r.out.find("\"kind\":\"segments\"") != std::string::npos);
}

TEST_CASE("missing input fails fast") {
    const auto r = run_cli("convert --input /no/such/file.jsonl");
    CHECK(r.exit_code != 0);
    CHECK(r.out.empty());
}

TEST_CASE("demo-corpus writes the documented record schema") {
    const fs::path out = temp_dir() / "demo.tsv";
    const auto r = run_cli("demo-corpus --format tsv --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.err.find("turns=14271") != std::string::npos);
    const std::string text = read_file(out);
    CHECK(text.rfind("dialog_id\tturn_index\tspeaker\tlabel\ttext\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 14272); // header + turns
}

TEST_CASE("convert with the taxonomy env var override") {
    // Pointing the env var at a broken taxonomy must fail the pipeline the
    // same way the --taxonomy flag does.
    const fs::path broken = write_temp("broken-taxonomy.txt", "dimensions:\n  - Task\nfunctions:\n");
    const auto via_flag = run_cli("convert --input " + kExcerpt + " --taxonomy " + broken.string());
    CHECK(via_flag.exit_code == 1);
    CHECK(via_flag.err.find("nine") != std::string::npos);

    const auto via_env = run_cli("convert --input " + kExcerpt,
                                 "ACTMAP_TAXONOMY=" + broken.string());
    CHECK(via_env.exit_code == 1);
    CHECK(via_env.err.find("nine") != std::string::npos);
}
