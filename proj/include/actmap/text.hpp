#pragma once

#include <string>
#include <string_view>

namespace actmap {

// Canonical lookup key for names that appear with mixed renderings in the
// wild ("Auto Positive", "AutoPositive", "auto-positive"): lower-cased with
// everything but letters and digits removed. ASCII only; corpus metadata and
// taxonomy names are ASCII.
std::string canon_key(std::string_view s);

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Case-insensitive substring test.
bool contains_ci(std::string_view haystack, std::string_view needle);

// True when the trimmed text ends in a question mark.
bool ends_with_question_mark(std::string_view s);

// "Auto Positive" -> "autoPositive"; used for DiAML attribute values.
std::string camel_case(std::string_view display_name);

// "Auto Positive" -> "AutoPositive"; used for dimension:function tokens.
std::string compact_name(std::string_view display_name);

// "Ask Confirm Departure" -> "ask-confirm-departure"; used for generated ids.
std::string slug(std::string_view s);

} // namespace actmap
