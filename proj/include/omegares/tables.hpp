#pragma once

// Plain-text reference tables shipped in data/.
//
// Format (ASCII, one record per line):
//
//   # omegares-table v1              required first line
//   # name: <identifier>             required
//   # provenance: <free text>        optional, any number of "# key: value" lines
//   # columns: <c1> <c2> ...         required, before the first data row
//   <v1> <v2> ...                    whitespace separated, "." decimal point only
//
// Other lines starting with "#" and blank lines are ignored.

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "omegares/errors.hpp"

namespace omegares::tables {

struct Table {
    std::string name;
    std::map<std::string, std::string> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    std::size_t column(const std::string& col) const {
        const auto it = std::find(columns.begin(), columns.end(), col);
        if (it == columns.end()) throw DomainError("table '" + name + "' has no column '" + col + "'");
        return static_cast<std::size_t>(it - columns.begin());
    }
};

namespace detail {

inline std::string trim(std::string s) {
    const auto ws = [](unsigned char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && ws(static_cast<unsigned char>(s.back()))) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && ws(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(i);
}

inline double parse_number(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const char* end = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("non-numeric token '" + tok + "'", line);
    return v;
}

}  // namespace detail

inline Table parse_table(std::istream& in) {
    Table t;
    std::string raw;
    std::size_t line = 0;
    bool saw_magic = false;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = detail::trim(raw);
        if (line == 1) {
            if (s != "# omegares-table v1") throw ParseError("missing '# omegares-table v1' header", line);
            saw_magic = true;
            continue;
        }
        if (s.empty()) continue;
        if (s[0] == '#') {
            const auto colon = s.find(':');
            if (colon == std::string::npos) continue;
            const std::string key = detail::trim(s.substr(1, colon - 1));
            const std::string value = detail::trim(s.substr(colon + 1));
            if (key == "columns") {
                std::istringstream cols(value);
                for (std::string c; cols >> c;) t.columns.push_back(c);
            } else if (key == "name") {
                t.name = value;
            } else {
                t.meta[key] = value;
            }
            continue;
        }
        if (t.columns.empty()) throw ParseError("data row before '# columns:'", line);
        std::istringstream fields(s);
        std::vector<double> row;
        for (std::string tok; fields >> tok;) row.push_back(detail::parse_number(tok, line));
        if (row.size() != t.columns.size())
            throw ParseError("expected " + std::to_string(t.columns.size()) + " columns, got " +
                                 std::to_string(row.size()),
                             line);
        t.rows.push_back(std::move(row));
    }
    if (!saw_magic) throw ParseError("empty table file");
    if (t.name.empty()) throw ParseError("table has no '# name:' line");
    return t;
}

inline Table load_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table " + path.string());
    return parse_table(in);
}

/// Directory holding the bundled tables: $OMEGARES_DATA_DIR, else the install-time default.
inline std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("OMEGARES_DATA_DIR"); env && *env) return env;
#ifdef OMEGARES_DEFAULT_DATA_DIR
    return OMEGARES_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

/// Piecewise-linear lookup of `y_col` at `x`; x must lie inside the tabulated range.
inline double interpolate(const Table& t, const std::string& x_col, const std::string& y_col, double x) {
    const std::size_t xi = t.column(x_col);
    const std::size_t yi = t.column(y_col);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t.rows.size());
    for (const auto& r : t.rows) pts.emplace_back(r[xi], r[yi]);
    std::sort(pts.begin(), pts.end());
    if (pts.empty()) throw DomainError("table '" + t.name + "' is empty");
    if (x < pts.front().first || x > pts.back().first)
        throw DomainError("x outside the range of table '" + t.name + "'");
    if (pts.size() == 1) return pts.front().second;
    const auto hi = std::lower_bound(pts.begin(), pts.end(), std::make_pair(x, -1e300));
    if (hi == pts.begin()) return hi->second;
    const auto lo = hi - 1;
    if (hi == pts.end()) return lo->second;
    const double w = (x - lo->first) / (hi->first - lo->first);
    return lo->second + w * (hi->second - lo->second);
}

}  // namespace omegares::tables
