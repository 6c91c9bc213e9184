#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "actmap/mapping.hpp"

namespace actmap {

enum class EmitFormat { DiamlXml, Jsonl, Tsv };

struct EmissionOptions {
    EmitFormat format = EmitFormat::Jsonl;
    bool include_unmapped = false; // emit needs-override turns with empty function lists
    bool pretty = false;           // diaml-xml only
};

// Serializes annotated turns. Deterministic: identical input and options give
// byte-identical output. Assignments appear in (dimension, function) order.
// Throws on invalid option combinations (pretty with a line format) and on
// TSV fields that cannot be represented (embedded tab or newline).
std::string emit(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts);
void emit(const std::vector<AnnotatedTurn>& turns, const EmissionOptions& opts, std::ostream& out);

// "AutoFeedback:AutoPositive" token for one assignment.
std::string assignment_token(const FunctionAssignment& a);

} // namespace actmap
