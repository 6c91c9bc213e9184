#include "actmap/stats.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "actmap/text.hpp"

namespace actmap {

using nlohmann::json;

namespace {

// Task leads, the rest follow alphabetically, matching the reference table
// layout for this conversion.
int dimension_rank(Dimension d) {
    switch (d) {
    case Dimension::Task: return 0;
    case Dimension::AlloFeedback: return 1;
    case Dimension::AutoFeedback: return 2;
    case Dimension::DiscourseStructuring: return 3;
    case Dimension::OwnCommunicationManagement: return 4;
    case Dimension::PartnerCommunicationManagement: return 5;
    case Dimension::SocialObligationsManagement: return 6;
    case Dimension::TimeManagement: return 7;
    case Dimension::TurnManagement: return 8;
    }
    return 9;
}

} // namespace

const DistributionRow* DistributionReport::find(Dimension d, std::string_view function) const {
    const std::string key = canon_key(function);
    for (const auto& row : rows) {
        if (row.dimension == d && canon_key(row.function) == key) return &row;
    }
    return nullptr;
}

DistributionReport function_distribution(const std::vector<AnnotatedTurn>& turns) {
    DistributionReport report;
    std::map<std::pair<int, std::string>, DistributionRow> rows;

    for (const auto& t : turns) {
        const bool system = t.turn.speaker == Speaker::System;
        if (system) {
            ++report.system_turns;
            report.system_assignments += t.assignments.size();
        } else {
            ++report.user_turns;
            report.user_assignments += t.assignments.size();
        }
        for (const auto& a : t.assignments) {
            auto key = std::make_pair(dimension_rank(a.dimension), compact_name(a.function));
            auto [it, inserted] = rows.try_emplace(key);
            if (inserted) {
                it->second.dimension = a.dimension;
                it->second.function = a.function;
            }
            if (system) {
                ++it->second.system_count;
            } else {
                ++it->second.user_count;
            }
        }
    }

    std::map<int, DimensionTotal> totals;
    for (auto& [key, row] : rows) {
        auto [it, inserted] = totals.try_emplace(key.first);
        if (inserted) it->second.dimension = row.dimension;
        it->second.system_count += row.system_count;
        it->second.user_count += row.user_count;
        report.rows.push_back(std::move(row));
    }
    for (auto& [rank, total] : totals) report.dimension_totals.push_back(total);
    return report;
}

std::string format_pct(size_t count, size_t denominator) {
    if (denominator == 0) return "0.00";
    // Round half up at two decimals using integer arithmetic.
    const std::uint64_t scaled = static_cast<std::uint64_t>(count) * 10000ULL;
    const std::uint64_t hundredths = (scaled + denominator / 2) / denominator;
    std::ostringstream out;
    out << hundredths / 100 << '.' << std::setw(2) << std::setfill('0') << hundredths % 100;
    return out.str();
}

namespace {

size_t denominator(const DistributionReport& r, DenominatorMode mode, CompareScope scope) {
    const bool turns = mode == DenominatorMode::Turns;
    switch (scope) {
    case CompareScope::System: return turns ? r.system_turns : r.system_assignments;
    case CompareScope::User: return turns ? r.user_turns : r.user_assignments;
    case CompareScope::All: return turns ? r.total_turns() : r.total_assignments();
    }
    return 0;
}

} // namespace

std::string render_report_table(const DistributionReport& r, DenominatorMode mode) {
    const size_t sys_den = denominator(r, mode, CompareScope::System);
    const size_t usr_den = denominator(r, mode, CompareScope::User);
    const size_t all_den = denominator(r, mode, CompareScope::All);

    std::ostringstream out;
    out << std::left << std::setw(32) << "dimension" << std::setw(26) << "function" << std::right
        << std::setw(8) << "sys" << std::setw(9) << "sys%" << std::setw(8) << "usr" << std::setw(9)
        << "usr%" << std::setw(8) << "all" << std::setw(9) << "all%" << "\n";

    auto line = [&](std::string_view dim, std::string_view fn, size_t sys, size_t usr) {
        out << std::left << std::setw(32) << dim << std::setw(26) << fn << std::right
            << std::setw(8) << sys << std::setw(9) << format_pct(sys, sys_den) << std::setw(8)
            << usr << std::setw(9) << format_pct(usr, usr_den) << std::setw(8) << sys + usr
            << std::setw(9) << format_pct(sys + usr, all_den) << "\n";
    };

    std::optional<Dimension> open;
    for (const auto& row : r.rows) {
        if (!open || *open != row.dimension) {
            if (open) {
                for (const auto& total : r.dimension_totals) {
                    if (total.dimension == *open) {
                        line(dimension_display(*open), "(total)", total.system_count,
                             total.user_count);
                    }
                }
            }
            open = row.dimension;
        }
        line(dimension_display(row.dimension), row.function, row.system_count, row.user_count);
    }
    if (open) {
        for (const auto& total : r.dimension_totals) {
            if (total.dimension == *open) {
                line(dimension_display(*open), "(total)", total.system_count, total.user_count);
            }
        }
    }
    out << std::left << std::setw(32) << "(segments)" << std::setw(26)
        << (mode == DenominatorMode::Turns ? "turns" : "assignments") << std::right << std::setw(8)
        << sys_den << std::setw(9) << "" << std::setw(8) << usr_den << std::setw(9) << ""
        << std::setw(8) << all_den << std::setw(9) << "" << "\n";
    return out.str();
}

std::string render_report_jsonl(const DistributionReport& r, DenominatorMode mode) {
    const size_t sys_den = denominator(r, mode, CompareScope::System);
    const size_t usr_den = denominator(r, mode, CompareScope::User);
    const size_t all_den = denominator(r, mode, CompareScope::All);

    std::ostringstream out;
    for (const auto& row : r.rows) {
        json rec;
        rec["kind"] = "row";
        rec["dimension"] = std::string(dimension_compact(row.dimension));
        rec["function"] = compact_name(row.function);
        rec["system_count"] = row.system_count;
        rec["system_pct"] = format_pct(row.system_count, sys_den);
        rec["user_count"] = row.user_count;
        rec["user_pct"] = format_pct(row.user_count, usr_den);
        rec["all_count"] = row.all_count();
        rec["all_pct"] = format_pct(row.all_count(), all_den);
        out << rec.dump() << "\n";
    }
    for (const auto& total : r.dimension_totals) {
        json rec;
        rec["kind"] = "dimension_total";
        rec["dimension"] = std::string(dimension_compact(total.dimension));
        rec["system_count"] = total.system_count;
        rec["system_pct"] = format_pct(total.system_count, sys_den);
        rec["user_count"] = total.user_count;
        rec["user_pct"] = format_pct(total.user_count, usr_den);
        rec["all_count"] = total.all_count();
        rec["all_pct"] = format_pct(total.all_count(), all_den);
        out << rec.dump() << "\n";
    }
    json seg;
    seg["kind"] = "segments";
    seg["system_turns"] = r.system_turns;
    seg["user_turns"] = r.user_turns;
    seg["system_assignments"] = r.system_assignments;
    seg["user_assignments"] = r.user_assignments;
    out << seg.dump() << "\n";
    return out.str();
}

ExpectedCounts ExpectedCounts::load(std::istream& in, const std::string& source_name) {
    ExpectedCounts out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed[0] == '#') continue;
        const Location loc{source_name, line_no};
        json rec;
        try {
            rec = json::parse(trimmed);
        } catch (const json::parse_error& e) {
            throw Error(ErrorKind::Parse, loc, std::string("bad expected-counts record: ") + e.what());
        }
        ExpectedEntry entry;
        const std::string scope = rec.value("scope", std::string{});
        if (scope == "system") {
            entry.scope = CompareScope::System;
        } else if (scope == "user") {
            entry.scope = CompareScope::User;
        } else if (scope == "all") {
            entry.scope = CompareScope::All;
        } else {
            throw Error(ErrorKind::Parse, loc, "scope must be 'system', 'user', or 'all'");
        }
        const auto dim = parse_dimension(rec.value("dimension", std::string{}));
        if (!dim) throw Error(ErrorKind::Parse, loc, "unknown dimension in expected-counts record");
        entry.dimension = *dim;
        entry.function = rec.value("function", std::string{});
        if (entry.function.empty()) throw Error(ErrorKind::Parse, loc, "missing 'function'");
        if (!rec.contains("count") || !rec["count"].is_number_integer()) {
            throw Error(ErrorKind::Parse, loc, "missing integer 'count'");
        }
        entry.expected = rec["count"].get<long long>();
        if (entry.expected < 0) throw Error(ErrorKind::Parse, loc, "count must be non-negative");
        const std::string mode = rec.value("compare", "exact");
        if (mode == "exact") {
            entry.mode = CompareMode::Exact;
        } else if (mode == "tolerance") {
            entry.mode = CompareMode::Tolerance;
            if (!rec.contains("tolerance") || !rec["tolerance"].is_number_integer()) {
                throw Error(ErrorKind::Parse, loc, "tolerance mode needs an integer 'tolerance'");
            }
            entry.tolerance = rec["tolerance"].get<long long>();
            if (entry.tolerance < 0) throw Error(ErrorKind::Parse, loc, "tolerance must be non-negative");
        } else {
            throw Error(ErrorKind::Parse, loc, "compare must be 'exact' or 'tolerance'");
        }
        entry.note = rec.value("note", std::string{});
        out.entries.push_back(std::move(entry));
    }
    return out;
}

ExpectedCounts ExpectedCounts::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open expected-counts file '" + path + "'");
    return load(in, path);
}

ComparisonResult compare_report(const DistributionReport& r, const ExpectedCounts& e) {
    ComparisonResult result;
    for (const auto& entry : e.entries) {
        ComparisonVerdict verdict;
        verdict.entry = entry;
        const DistributionRow* row = r.find(entry.dimension, entry.function);
        size_t actual = 0;
        if (row) {
            switch (entry.scope) {
            case CompareScope::System: actual = row->system_count; break;
            case CompareScope::User: actual = row->user_count; break;
            case CompareScope::All: actual = row->all_count(); break;
            }
        }
        verdict.actual = static_cast<long long>(actual);
        verdict.delta = verdict.actual - entry.expected;
        verdict.pass = entry.mode == CompareMode::Exact
                           ? verdict.delta == 0
                           : std::llabs(verdict.delta) <= entry.tolerance;
        if (!verdict.pass) {
            ++result.failures;
            if (entry.mode == CompareMode::Exact) ++result.exact_failures;
        }
        result.verdicts.push_back(std::move(verdict));
    }
    return result;
}

std::string render_comparison(const ComparisonResult& c) {
    std::ostringstream out;
    for (const auto& v : c.verdicts) {
        const char* scope = v.entry.scope == CompareScope::System ? "system"
                            : v.entry.scope == CompareScope::User ? "user"
                                                                  : "all";
        out << (v.pass ? "pass" : "FAIL") << "  " << scope << "  "
            << dimension_compact(v.entry.dimension) << ":" << compact_name(v.entry.function)
            << "  expected=" << v.entry.expected;
        if (v.entry.mode == CompareMode::Tolerance) out << "(±" << v.entry.tolerance << ")";
        out << " actual=" << v.actual << " delta=" << (v.delta >= 0 ? "+" : "") << v.delta << "\n";
    }
    out << "comparisons=" << c.verdicts.size() << " failures=" << c.failures
        << " exact_failures=" << c.exact_failures << "\n";
    return out.str();
}

} // namespace actmap
