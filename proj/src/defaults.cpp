#include "actmap/defaults.hpp"

namespace actmap::defaults {

namespace {

const char kTaxonomyText[] =
#include "default_taxonomy.inc"
    ;

const char kRulesText[] =
#include "default_rules.inc"
    ;

} // namespace

std::string_view taxonomy_text() { return kTaxonomyText; }
std::string_view rules_text() { return kRulesText; }

const Taxonomy& taxonomy() {
    static const Taxonomy t = Taxonomy::load_string(taxonomy_text(), "<bundled taxonomy>");
    return t;
}

const RuleTable& rule_table() {
    static const RuleTable r = RuleTable::load_string(rules_text(), "<bundled rules>", taxonomy());
    return r;
}

} // namespace actmap::defaults
