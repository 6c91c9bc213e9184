#include "actmap/reference_corpus.hpp"

#include <string>

namespace actmap::refcorpus {

namespace {

void add_block(Corpus& corpus, const std::string& dialog_id, Speaker speaker,
               const std::string& label, const std::string& text, size_t count) {
    Dialog dialog;
    dialog.dialog_id = dialog_id;
    dialog.turns.reserve(count);
    for (size_t i = 0; i < count; ++i) {
        dialog.turns.push_back(Turn{dialog_id, static_cast<int>(i), speaker, label, text});
    }
    corpus.dialogs.push_back(std::move(dialog));
}

// An Ask Time prompt before every user turn, so the user turns see a
// time-request context.
void add_context_block(Corpus& corpus, const std::string& dialog_id, const std::string& user_label,
                       const std::string& user_text, size_t pairs) {
    Dialog dialog;
    dialog.dialog_id = dialog_id;
    dialog.turns.reserve(pairs * 2);
    for (size_t i = 0; i < pairs; ++i) {
        dialog.turns.push_back(Turn{dialog_id, static_cast<int>(2 * i), Speaker::System,
                                    "Ask Time", "When do you wanna travel?"});
        dialog.turns.push_back(Turn{dialog_id, static_cast<int>(2 * i + 1), Speaker::User,
                                    user_label, user_text});
    }
    corpus.dialogs.push_back(std::move(dialog));
}

} // namespace

Corpus build() {
    Corpus corpus;
    corpus.provenance = "<reference corpus>";

    const auto sys = [&](const std::string& slug_suffix, const std::string& label,
                         const std::string& text, size_t count) {
        add_block(corpus, "sys-" + slug_suffix, Speaker::System, label, text, count);
    };
    const auto usr = [&](const std::string& slug_suffix, const std::string& label,
                         const std::string& text, size_t count) {
        add_block(corpus, "usr-" + slug_suffix, Speaker::User, label, text, count);
    };

    // System side: 9083 turns.
    sys("confirm-understood", "Confirm Understood", "Right.", 912);
    sys("ask-confirm-departure", "Ask Confirm Departure",
        "Leaving from OAKLAND . Is this correct?", 823);
    sys("ask-another-query", "Ask Another Query",
        "You can say, when is the next bus, when is the previous bus, start a new query, or goodbye.",
        728);
    sys("ask-bus", "Ask Bus", "What bus schedule information are you looking for?", 714);
    sys("ask-confirm-time", "Ask Confirm Time", "Leaving at 5 a.m.. Did I get that right?", 497);
    sys("ask-time", "Ask Time", "When do you wanna travel?", 433); // +60 in ctx blocks below
    sys("ask-confirm-destination", "Ask Confirm Destination",
        "Going to FIFTH AVENUE . Is this correct?", 458);
    sys("explain", "Explain",
        "For example, you can say, Forbes and Murray, Downtown, or McKeesport.", 438);
    sys("ask-confirm-bus", "Ask Confirm Bus", "The 54C. Did I get that right?", 425);
    sys("ask-departure", "Ask Departure", "Where are you leaving from?", 410);
    sys("deliver-result", "Deliver Result",
        "The next 61C leaves Eighth Avenue at Ann at 7:45 p.m. and arrives at Second Street at Grant at 7:59 p.m..",
        410);
    sys("filler", "Filler", "Alright", 410);
    sys("announce-querying-promise", "Announce Querying", "Hold on. I'll look that up.", 277);
    sys("announce-querying", "Announce Querying", "Just a second.", 87);
    sys("offer-help", "Offer Help", "To get help at any time, just say Help or press zero.", 348);
    sys("greeting", "Greeting", "Welcome to the CMU Let's Go bus information system.", 347);
    sys("ask-destination", "Ask Destination", "What is your destination?", 345);
    sys("inform-no-schedule", "Inform No Schedule",
        "I'm sorry but I do not have the schedule for the 500. The routes I currently cover are the following: 28X, 54C, 56U, 59U, 61A, 61B, 61C, 61D, 61F, 64A, 69A, and 501.",
        343);
    sys("ask-confirm-with-keys", "Ask Confirm With Keys",
        "If you want the schedule of the 54C say yes or press one, otherwise say no or press three.",
        142);
    sys("ask-confirm-neighborhood", "Ask Confirm Neighborhood",
        "Waterworks Mall. Is this correct?", 128);
    sys("announce-restart", "Announce Restart", "Okay, let's start from the beginning.", 84);
    sys("inform-shorter-answer", "Inform Shorter Answer",
        "Please use shorter answers because I have trouble understanding long sentences.", 44);
    sys("inform-shorter-answer-assertive", "Inform Shorter Answer",
        "I need you to give me a short answer.", 31);
    sys("inform-help", "Inform Help",
        "I am an automated spoken dialogue system that can give you schedule information for bus routes in Pittsburgh's East End. You can ask me about the following buses: 28X, 54C, 56U, 59U, 61A, 61B, 61C, 61D, 61F, 64A, 69A, and 501.",
        67);
    sys("goodbye", "Goodbye",
        "Thank you for using the CMU Let's Go Bus Information System. Goodbye.", 36);
    sys("disambiguate-bus-stop", "Disambiguate Bus Stop",
        "Which stop in Duquesne are you leaving from?", 25);
    sys("disambiguate-bus-stop-different", "Disambiguate Bus Stop",
        "Downtown and Forbes are both the same stop. Please provide a different start or end point.",
        7);
    sys("inform-no-route", "Inform No Route",
        "I'm sorry, but there is no bus that goes between CMU and Squirrel Hill at that time.", 25);
    sys("instruct-louder", "Instruct Louder",
        "I'm having some trouble hearing you. If you're still there, please try to talk a little bit louder or closer to the phone.",
        13);
    sys("confirm-restart", "Confirm Restart", "Are you sure you want to start over?", 10);
    sys("instruct-more-quiet", "Instruct More Quiet",
        "I can't understand loud speech. Please speak more quietly.", 6);

    // User side: 5188 turns (plus the 60 Ask Time prompts in the ctx blocks,
    // which belong to the system count above).
    usr("place-information", "Place Information", "DOWNTOWN", 879);
    usr("unqualified-unrecognized", "Unqualified / Unrecognized", "THE", 783);
    usr("reject", "Reject", "NO", 746);
    usr("line-information-question", "Line Information",
        "WHEN IS THE NEXT 28X FROM DOWNTOWN TO THE AIRPORT", 150);
    usr("line-information", "Line Information", "THE 61A", 290);
    usr("time-information", "Time Information", "ELEVEN O'CLOCK", 391);
    usr("confirm-departure", "Confirm Departure", "YES", 291);
    usr("confirm-destination", "Confirm Destination", "YES", 246);
    usr("confirm-time", "Confirm Time", "YES", 225);
    usr("confirm", "Confirm", "YES", 214);
    usr("confirm-bus", "Confirm Bus", "YES", 179);
    usr("request-next-bus-question", "Request Next Bus", "WHEN IS THE NEXT BUS", 40);
    usr("request-next-bus", "Request Next Bus", "THE NEXT BUS", 79);
    usr("reject-departure", "Reject Departure", "NO", 135);
    usr("new-query", "New Query", "START A NEW QUERY", 98);
    usr("reject-time", "Reject Time", "NO", 95);
    usr("request-previous-bus-question", "Request Previous Bus", "WHEN IS THE PREVIOUS BUS", 20);
    usr("request-previous-bus", "Request Previous Bus", "THE PREVIOUS BUS", 35);
    usr("reject-bus", "Reject Bus", "NO", 69);
    usr("reject-destination", "Reject Destination", "NO", 53);
    usr("request-help", "Request Help", "HELP", 52);
    usr("goodbye", "Goodbye", "GOODBYE", 29);
    usr("request-schedule", "Request Schedule", "HOLIDAY SCHEDULE", 18);
    usr("polite", "Polite", "THANK YOU", 8);
    usr("inform", "Inform", "I WANT TO GO TO THE AIRPORT", 3);

    // Statement-form bus requests answering a system time prompt.
    add_context_block(corpus, "ctx-request-next-bus", "Request Next Bus", "THE NEXT BUS", 40);
    add_context_block(corpus, "ctx-request-previous-bus", "Request Previous Bus",
                      "THE PREVIOUS BUS", 20);

    return corpus;
}

} // namespace actmap::refcorpus
