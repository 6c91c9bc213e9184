#pragma once

#include <string_view>

#include "actmap/mapping.hpp"
#include "actmap/taxonomy.hpp"

namespace actmap::defaults {

// Text of the bundled taxonomy document and LEGO rule pack. The build embeds
// the files under data/, so the library works without install paths; the same
// files can be copied, edited, and passed back via --taxonomy / --rules.
std::string_view taxonomy_text();
std::string_view rules_text();

// Lazily loaded shared instances of the bundled documents.
const Taxonomy& taxonomy();
const RuleTable& rule_table();

} // namespace actmap::defaults
