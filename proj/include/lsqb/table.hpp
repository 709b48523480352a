#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lsqb/montecarlo.hpp"

namespace lsqb {

/// One CSV row of a simulation table. Column order is fixed by kResultColumns.
struct ResultRow {
    std::string axis_name;
    double axis_value = 0.0;
    std::optional<double> n_bound_real;
    std::optional<std::int64_t> n_bound_ceil;
    std::string binding_term;
    std::optional<double> s_opt_n2;
    std::optional<double> s_opt_n3;
    std::optional<double> tau_opt;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;

    bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kResultColumns[] = {
    "axis_name", "axis_value", "n_bound_real", "n_bound_ceil", "binding_term",
    "s_opt_n2",  "s_opt_n3",   "tau_opt",      "p_hat",        "ci_low",
    "ci_high",   "trials",     "seed"};

ResultRow to_result_row(const SweepRow& row);

// 17 significant digits, enough for an exact double round trip.
std::string format_number(double v);

void write_result_csv(std::ostream& out, const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_result_csv(std::istream& in);

/// Generic numeric table with named columns; empty cells for missing values.
struct CurveTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
};

void write_curve_csv(std::ostream& out, const CurveTable& table);

// File helpers; throw IoError on failure.
void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

}  // namespace lsqb
