#include "lsqb/table.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "lsqb/errors.hpp"

namespace lsqb {
namespace {

constexpr std::size_t kColumnCount = std::size(kResultColumns);

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            out.push_back(field);
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    out.push_back(field);
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ParameterError("bad numeric CSV field '" + s + "'");
    return v;
}

template <class Int>
Int parse_int(const std::string& s) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParameterError("bad integer CSV field '" + s + "'");
    }
    return v;
}

std::optional<double> opt_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_double(s);
}

std::string opt_text(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ResultRow to_result_row(const SweepRow& row) {
    ResultRow out;
    out.axis_name = std::string(to_string(row.axis));
    out.axis_value = row.axis_value;
    out.n_bound_real = row.bound.n_final;
    out.n_bound_ceil = row.bound.n_ceil;
    out.binding_term = row.bound.binding;
    out.s_opt_n2 = row.bound.s_opt_n2;
    out.s_opt_n3 = row.bound.s_opt_n3;
    out.tau_opt = row.bound.tau_opt;
    out.p_hat = row.tail.p_hat;
    out.ci_low = row.tail.ci_low;
    out.ci_high = row.tail.ci_high;
    out.trials = row.tail.trials;
    out.seed = row.tail.seed;
    return out;
}

void write_result_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    for (std::size_t c = 0; c < kColumnCount; ++c) out << (c ? "," : "") << kResultColumns[c];
    out << '\n';
    for (const auto& r : rows) {
        if (r.axis_name.find_first_of(",\n\"") != std::string::npos ||
            r.binding_term.find_first_of(",\n\"") != std::string::npos) {
            throw ParameterError("CSV text fields must not contain commas, quotes or newlines");
        }
        out << r.axis_name << ',' << format_number(r.axis_value) << ',' << opt_text(r.n_bound_real) << ','
            << (r.n_bound_ceil ? std::to_string(*r.n_bound_ceil) : std::string()) << ',' << r.binding_term
            << ',' << opt_text(r.s_opt_n2) << ',' << opt_text(r.s_opt_n3) << ',' << opt_text(r.tau_opt)
            << ',' << format_number(r.p_hat) << ',' << format_number(r.ci_low) << ','
            << format_number(r.ci_high) << ',' << r.trials << ',' << r.seed << '\n';
    }
}

std::vector<ResultRow> parse_result_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParameterError("CSV is empty");
    const auto header = split_fields(line);
    if (header.size() != kColumnCount) throw ParameterError("CSV header has the wrong column count");
    for (std::size_t c = 0; c < kColumnCount; ++c) {
        if (header[c] != kResultColumns[c]) throw ParameterError("CSV header column mismatch: " + header[c]);
    }
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != kColumnCount) throw ParameterError("CSV row has the wrong column count");
        ResultRow r;
        r.axis_name = f[0];
        r.axis_value = parse_double(f[1]);
        r.n_bound_real = opt_double(f[2]);
        if (!f[3].empty()) r.n_bound_ceil = parse_int<std::int64_t>(f[3]);
        r.binding_term = f[4];
        r.s_opt_n2 = opt_double(f[5]);
        r.s_opt_n3 = opt_double(f[6]);
        r.tau_opt = opt_double(f[7]);
        r.p_hat = parse_double(f[8]);
        r.ci_low = parse_double(f[9]);
        r.ci_high = parse_double(f[10]);
        r.trials = parse_int<std::int64_t>(f[11]);
        r.seed = parse_int<std::uint64_t>(f[12]);
        rows.push_back(std::move(r));
    }
    return rows;
}

void write_curve_csv(std::ostream& out, const CurveTable& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << opt_text(row[c]);
        out << '\n';
    }
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << contents;
    f.flush();
    if (!f) throw IoError("failed writing '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace lsqb
