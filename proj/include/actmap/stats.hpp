#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "actmap/mapping.hpp"

namespace actmap {

struct DistributionRow {
    Dimension dimension = Dimension::Task;
    std::string function;
    size_t system_count = 0;
    size_t user_count = 0;
    size_t all_count() const { return system_count + user_count; }
};

struct DimensionTotal {
    Dimension dimension = Dimension::Task;
    size_t system_count = 0;
    size_t user_count = 0;
    size_t all_count() const { return system_count + user_count; }
};

// Per-(dimension, function) assignment counts split by speaker side, plus
// the segment totals the percentage columns are computed against.
struct DistributionReport {
    std::vector<DistributionRow> rows;      // Task first, then dimensions alphabetically;
                                            // functions alphabetical within a dimension
    std::vector<DimensionTotal> dimension_totals;
    size_t system_turns = 0;
    size_t user_turns = 0;
    size_t system_assignments = 0;
    size_t user_assignments = 0;

    size_t total_turns() const { return system_turns + user_turns; }
    size_t total_assignments() const { return system_assignments + user_assignments; }
    const DistributionRow* find(Dimension d, std::string_view function) const;
};

DistributionReport function_distribution(const std::vector<AnnotatedTurn>& turns);

// Percentage denominators: turn counts per side (the reference convention)
// or assignment counts per side.
enum class DenominatorMode { Turns, Assignments };

// Display rounding: two decimals, round half up. Comparisons never use this.
std::string format_pct(size_t count, size_t denominator);

std::string render_report_table(const DistributionReport& r, DenominatorMode mode);
std::string render_report_jsonl(const DistributionReport& r, DenominatorMode mode);

enum class CompareScope { System, User, All };
enum class CompareMode { Exact, Tolerance };

struct ExpectedEntry {
    CompareScope scope = CompareScope::All;
    Dimension dimension = Dimension::Task;
    std::string function;
    long long expected = 0;
    CompareMode mode = CompareMode::Exact;
    long long tolerance = 0;
    std::string note;
};

struct ExpectedCounts {
    std::vector<ExpectedEntry> entries;

    // One JSON record per line: scope, dimension, function, count,
    // compare ("exact" | "tolerance"), tolerance, optional note.
    static ExpectedCounts load(std::istream& in, const std::string& source_name);
    static ExpectedCounts load_file(const std::string& path);
};

struct ComparisonVerdict {
    ExpectedEntry entry;
    long long actual = 0;
    long long delta = 0; // actual - expected
    bool pass = false;
};

struct ComparisonResult {
    std::vector<ComparisonVerdict> verdicts;
    size_t failures = 0;
    size_t exact_failures = 0;
};

// One verdict per expected entry. Exact entries fail on any delta; tolerance
// entries fail when |delta| exceeds the tolerance. Functions missing from the
// report count as zero.
ComparisonResult compare_report(const DistributionReport& r, const ExpectedCounts& e);

std::string render_comparison(const ComparisonResult& c);

} // namespace actmap
