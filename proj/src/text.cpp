#include "actmap/text.hpp"

#include <algorithm>
#include <cctype>

namespace actmap {

namespace {

char lower(char c) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

bool is_alnum(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

bool is_space(char c) {
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

} // namespace

std::string canon_key(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (is_alnum(c)) out.push_back(lower(c));
    }
    return out;
}

std::string to_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), lower);
    return out;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

bool contains_ci(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    if (needle.size() > haystack.size()) return false;
    auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(),
                          [](char a, char b) { return lower(a) == lower(b); });
    return it != haystack.end();
}

bool ends_with_question_mark(std::string_view s) {
    size_t e = s.size();
    while (e > 0 && is_space(s[e - 1])) --e;
    return e > 0 && s[e - 1] == '?';
}

std::string camel_case(std::string_view display_name) {
    std::string out;
    out.reserve(display_name.size());
    bool word_start = false;
    for (char c : display_name) {
        if (!is_alnum(c)) {
            word_start = !out.empty();
            continue;
        }
        if (out.empty()) {
            out.push_back(lower(c));
        } else if (word_start) {
            out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
        } else {
            out.push_back(c);
        }
        word_start = false;
    }
    return out;
}

std::string compact_name(std::string_view display_name) {
    std::string out;
    out.reserve(display_name.size());
    for (char c : display_name) {
        if (is_alnum(c)) out.push_back(c);
    }
    return out;
}

std::string slug(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool dash_pending = false;
    for (char c : s) {
        if (is_alnum(c)) {
            if (dash_pending && !out.empty()) out.push_back('-');
            out.push_back(lower(c));
            dash_pending = false;
        } else {
            dash_pending = true;
        }
    }
    return out;
}

} // namespace actmap
