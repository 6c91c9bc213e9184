#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "actmap/error.hpp"

namespace actmap {

// The nine ISO 24617-2 semantic dimensions. The set is fixed by the standard;
// taxonomy documents must declare exactly these (any rendering of the names).
enum class Dimension {
    Task,
    AutoFeedback,
    AlloFeedback,
    TurnManagement,
    TimeManagement,
    DiscourseStructuring,
    OwnCommunicationManagement,
    PartnerCommunicationManagement,
    SocialObligationsManagement,
};

inline constexpr int kDimensionCount = 9;

std::array<Dimension, kDimensionCount> all_dimensions();

// "Auto-Feedback" (document rendering), "AutoFeedback" (pair tokens),
// "autoFeedback" (DiAML attributes).
std::string_view dimension_display(Dimension d);
std::string_view dimension_compact(Dimension d);
std::string dimension_xml(Dimension d);

std::optional<Dimension> parse_dimension(std::string_view name);

enum class FunctionKind { GeneralPurpose, DimensionSpecific };

struct CommunicativeFunction {
    std::string name; // display form as written in the taxonomy document
    FunctionKind kind = FunctionKind::GeneralPurpose;
    std::optional<std::string> parent;        // general-purpose only
    std::optional<Dimension> home_dimension;  // dimension-specific only
};

// Immutable after load; safe for concurrent reads.
class Taxonomy {
public:
    // Parses the two-section taxonomy document (dimensions: / functions:).
    // Rejects, with a located diagnostic: malformed lines, duplicate function
    // names, missing or extra dimensions, dimension-specific functions homed
    // in Task, unknown parents, and cycles in the parent relation.
    static Taxonomy load(std::istream& in, const std::string& source_name);
    static Taxonomy load_string(std::string_view content, const std::string& source_name);
    static Taxonomy load_file(const std::string& path);

    bool contains(std::string_view function_name) const;
    const CommunicativeFunction& function(std::string_view function_name) const;

    // True iff the function may be annotated in the dimension: general-purpose
    // functions in any dimension, dimension-specific ones only at home.
    // Throws on unknown function names.
    bool is_valid_pair(std::string_view function_name, Dimension d) const;

    // Parent chain from the function's parent up to its root, display names.
    // Empty for roots and for dimension-specific functions.
    std::vector<std::string> ancestors(std::string_view function_name) const;

    size_t function_count() const { return order_.size(); }
    const std::vector<std::string>& function_names() const { return order_; }

private:
    const CommunicativeFunction* find(std::string_view function_name) const;

    std::unordered_map<std::string, CommunicativeFunction> functions_; // key: canon_key(name)
    std::vector<std::string> order_; // display names in document order
};

} // namespace actmap
