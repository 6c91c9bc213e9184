// Independent per-turn oracle for the bundled LEGO mapping: a flat lookup
// table from (speaker, label, template text) to the expected function set,
// written out by hand from the documented per-label strategies. It shares no
// code with the rule engine; tests compare engine output against it.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "actmap/corpus.hpp"
#include "actmap/taxonomy.hpp"

namespace oracle {

using actmap::Dimension;
using actmap::Speaker;

using Pair = std::pair<Dimension, std::string>;

struct Expect {
    bool pending = false;
    std::vector<Pair> pairs;
};

struct Row {
    Speaker speaker;
    std::string label;
    std::string text;
    bool bus_request_statement = false; // context decides between Answer and Inform
    Expect expect;
};

inline const std::vector<Row>& rows() {
    static const std::vector<Row> table = [] {
        std::vector<Row> r;
        auto sys = [&](const char* label, const char* text, std::vector<Pair> pairs) {
            r.push_back(Row{Speaker::System, label, text, false, Expect{false, std::move(pairs)}});
        };
        auto usr = [&](const char* label, const char* text, std::vector<Pair> pairs) {
            r.push_back(Row{Speaker::User, label, text, false, Expect{false, std::move(pairs)}});
        };

        const Pair pausing{Dimension::TimeManagement, "Pausing"};
        const Pair promise{Dimension::Task, "Promise"};
        const Pair interaction{Dimension::DiscourseStructuring, "Interaction Structuring"};
        const Pair opening{Dimension::DiscourseStructuring, "Opening"};
        const Pair set_q{Dimension::Task, "Set Question"};
        const Pair check_q{Dimension::Task, "Check Question"};
        const Pair auto_pos{Dimension::AutoFeedback, "Auto Positive"};
        const Pair allo_pos{Dimension::AlloFeedback, "Allo Positive"};
        const Pair allo_neg{Dimension::AlloFeedback, "Allo Negative"};
        const Pair inform{Dimension::Task, "Inform"};
        const Pair instruct{Dimension::Task, "Instruct"};
        const Pair request{Dimension::Task, "Request"};
        const Pair answer{Dimension::Task, "Answer"};
        const Pair confirm{Dimension::Task, "Confirm"};
        const Pair disconfirm{Dimension::Task, "Disconfirm"};
        const Pair apology{Dimension::SocialObligationsManagement, "Apology"};
        const Pair greeting{Dimension::SocialObligationsManagement, "Greeting"};
        const Pair goodbye{Dimension::SocialObligationsManagement, "Goodbye"};
        const Pair thanking{Dimension::SocialObligationsManagement, "Thanking"};

        // System side.
        sys("Announce Querying", "Just a second.", {pausing});
        sys("Announce Querying", "Hold on. I'll look that up.", {pausing, promise});
        sys("Announce Restart", "Okay, let's start from the beginning.", {interaction});
        sys("Ask Another Query",
            "You can say, when is the next bus, when is the previous bus, start a new query, or goodbye.",
            {instruct, interaction});
        sys("Ask Bus", "What bus schedule information are you looking for?", {set_q});
        sys("Ask Departure", "Where are you leaving from?", {set_q});
        sys("Ask Destination", "What is your destination?", {set_q});
        sys("Ask Time", "When do you wanna travel?", {set_q});
        sys("Ask Confirm Bus", "The 54C. Did I get that right?", {auto_pos, check_q});
        sys("Ask Confirm Departure", "Leaving from OAKLAND . Is this correct?",
            {auto_pos, check_q});
        sys("Ask Confirm Departure",
            "If you want to leave from OAKLAND say yes or press one, otherwise say no or press three.",
            {auto_pos, instruct});
        sys("Ask Confirm Destination", "Going to FIFTH AVENUE . Is this correct?",
            {auto_pos, check_q});
        sys("Ask Confirm Destination",
            "If you want to go to FIFTH AVENUE say yes or press one, otherwise say no or press three.",
            {auto_pos, instruct});
        sys("Ask Confirm Neighborhood", "Waterworks Mall. Is this correct?", {auto_pos, check_q});
        sys("Ask Confirm Time", "Leaving at 5 a.m.. Did I get that right?", {auto_pos, check_q});
        sys("Ask Confirm With Keys",
            "If you want the schedule of the 54C say yes or press one, otherwise say no or press three.",
            {auto_pos, instruct});
        sys("Confirm Restart", "Are you sure you want to start over?", {auto_pos, check_q});
        sys("Confirm Understood", "Right.", {auto_pos});
        sys("Deliver Result",
            "The next 61C leaves Eighth Avenue at Ann at 7:45 p.m. and arrives at Second Street at Grant at 7:59 p.m..",
            {inform});
        sys("Disambiguate Bus Stop", "Which stop in Duquesne are you leaving from?", {set_q});
        sys("Disambiguate Bus Stop",
            "Downtown and Forbes are both the same stop. Please provide a different start or end point.",
            {request});
        sys("Explain", "For example, you can say, Forbes and Murray, Downtown, or McKeesport.",
            {instruct});
        sys("Filler", "Alright", {auto_pos});
        sys("Goodbye", "Thank you for using the CMU Let's Go Bus Information System. Goodbye.",
            {goodbye});
        sys("Greeting", "Welcome to the CMU Let's Go bus information system.",
            {opening, greeting});
        sys("Inform Help",
            "I am an automated spoken dialogue system that can give you schedule information for bus routes in Pittsburgh's East End. You can ask me about the following buses: 28X, 54C, 56U, 59U, 61A, 61B, 61C, 61D, 61F, 64A, 69A, and 501.",
            {inform});
        sys("Inform No Route",
            "I'm sorry, but there is no bus that goes between CMU and Squirrel Hill at that time.",
            {inform, apology});
        sys("Inform No Schedule",
            "I'm sorry but I do not have the schedule for the 500. The routes I currently cover are the following: 28X, 54C, 56U, 59U, 61A, 61B, 61C, 61D, 61F, 64A, 69A, and 501.",
            {inform, apology});
        sys("Inform Shorter Answer",
            "Please use shorter answers because I have trouble understanding long sentences.",
            {request});
        sys("Inform Shorter Answer", "I need you to give me a short answer.", {instruct});
        sys("Instruct Louder",
            "I'm having some trouble hearing you. If you're still there, please try to talk a little bit louder or closer to the phone.",
            {request});
        sys("Instruct More Quiet", "I can't understand loud speech. Please speak more quietly.",
            {request});
        sys("Offer Help", "To get help at any time, just say Help or press zero.", {instruct});

        // User side.
        usr("Confirm", "YES", {confirm, allo_pos});
        usr("Confirm Bus", "YES", {confirm, allo_pos});
        usr("Confirm Departure", "YES", {confirm, allo_pos});
        usr("Confirm Destination", "YES", {confirm, allo_pos});
        usr("Confirm Time", "YES", {confirm, allo_pos});
        usr("Reject", "NO", {disconfirm, allo_neg});
        usr("Reject Bus", "NO", {disconfirm, allo_neg});
        usr("Reject Departure", "NO", {disconfirm, allo_neg});
        usr("Reject Destination", "NO", {disconfirm, allo_neg});
        usr("Reject Time", "NO", {disconfirm, allo_neg});
        usr("Goodbye", "GOODBYE", {goodbye});
        usr("Inform", "I WANT TO GO TO THE AIRPORT", {inform});
        usr("Line Information", "WHEN IS THE NEXT 28X FROM DOWNTOWN TO THE AIRPORT", {set_q});
        usr("Line Information", "THE 61A", {inform});
        usr("Place Information", "DOWNTOWN", {answer});
        usr("Time Information", "ELEVEN O'CLOCK", {answer});
        usr("New Query", "START A NEW QUERY", {instruct, interaction});
        usr("Polite", "THANK YOU", {thanking});
        usr("Request Help", "HELP", {request});
        usr("Request Next Bus", "WHEN IS THE NEXT BUS", {set_q});
        usr("Request Previous Bus", "WHEN IS THE PREVIOUS BUS", {set_q});
        usr("Request Schedule", "HOLIDAY SCHEDULE", {inform});
        r.push_back(Row{Speaker::User, "Unqualified / Unrecognized", "THE", false,
                        Expect{true, {}}});

        // Statement-form bus requests: Answer after a system time request,
        // Inform otherwise.
        r.push_back(Row{Speaker::User, "Request Next Bus", "THE NEXT BUS", true, {}});
        r.push_back(Row{Speaker::User, "Request Previous Bus", "THE PREVIOUS BUS", true, {}});
        return r;
    }();
    return table;
}

inline Expect expect_for(const Row& row, const std::optional<std::string>& context_label) {
    if (!row.bus_request_statement) return row.expect;
    Expect e;
    if (context_label && *context_label == "Ask Time") {
        e.pairs = {{Dimension::Task, "Answer"}};
    } else {
        e.pairs = {{Dimension::Task, "Inform"}};
    }
    return e;
}

// Looks up the oracle row for a turn by (speaker, label, exact text).
inline const Row* find_row(const actmap::Turn& turn) {
    for (const auto& row : rows()) {
        if (row.speaker == turn.speaker && row.label == turn.label && row.text == turn.text) {
            return &row;
        }
    }
    return nullptr;
}

// Random corpus over the oracle rows: dialogs of random length, rows drawn
// uniformly, turn_index sequential per dialog.
inline actmap::Corpus random_corpus(std::uint32_t seed, size_t max_turns) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, rows().size() - 1);
    std::uniform_int_distribution<size_t> dialog_len(1, 24);

    actmap::Corpus corpus;
    corpus.provenance = "<oracle seed " + std::to_string(seed) + ">";
    size_t total = std::uniform_int_distribution<size_t>(1, max_turns)(rng);
    size_t emitted = 0;
    int dialog_no = 0;
    while (emitted < total) {
        actmap::Dialog dialog;
        dialog.dialog_id = "d" + std::to_string(dialog_no++);
        const size_t len = std::min(dialog_len(rng), total - emitted);
        for (size_t i = 0; i < len; ++i) {
            const Row& row = rows()[pick(rng)];
            dialog.turns.push_back(actmap::Turn{dialog.dialog_id, static_cast<int>(i), row.speaker,
                                                row.label, row.text});
        }
        emitted += len;
        corpus.dialogs.push_back(std::move(dialog));
    }
    return corpus;
}

// Context labels as the mapper defines them: the label of the nearest
// preceding system turn within the dialog.
inline std::vector<std::optional<std::string>> context_labels(const actmap::Dialog& dialog) {
    std::vector<std::optional<std::string>> out;
    std::optional<std::string> context;
    for (const auto& turn : dialog.turns) {
        out.push_back(context);
        if (turn.speaker == Speaker::System) context = turn.label;
    }
    return out;
}

} // namespace oracle
