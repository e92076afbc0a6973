#pragma once

// Touchstone 1.0 (.s1p/.s2p) and the CSV magnitude sidecar.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "omegares/detail/format.hpp"
#include "omegares/errors.hpp"
#include "omegares/sparams.hpp"

namespace omegares::touchstone {

using sparams::complex;
using sparams::SParamTrace;
using sparams::SPoint;

enum class DataFormat { DB, MA, RI };
enum class FrequencyUnit { Hz, kHz, MHz, GHz };

inline double unit_scale(FrequencyUnit u) {
    switch (u) {
        case FrequencyUnit::Hz: return 1.0;
        case FrequencyUnit::kHz: return 1e3;
        case FrequencyUnit::MHz: return 1e6;
        case FrequencyUnit::GHz: return 1e9;
    }
    return 1.0;
}

/// Power of ten of the unit in Hz.
inline int unit_exponent(FrequencyUnit u) {
    switch (u) {
        case FrequencyUnit::Hz: return 0;
        case FrequencyUnit::kHz: return 3;
        case FrequencyUnit::MHz: return 6;
        case FrequencyUnit::GHz: return 9;
    }
    return 0;
}

inline std::string_view unit_name(FrequencyUnit u) {
    switch (u) {
        case FrequencyUnit::Hz: return "HZ";
        case FrequencyUnit::kHz: return "KHZ";
        case FrequencyUnit::MHz: return "MHZ";
        case FrequencyUnit::GHz: return "GHZ";
    }
    return "HZ";
}

inline std::string_view format_name(DataFormat f) {
    switch (f) {
        case DataFormat::DB: return "DB";
        case DataFormat::MA: return "MA";
        case DataFormat::RI: return "RI";
    }
    return "MA";
}

/// The "# <unit> <parameter> <format> R <impedance>" line, with version-1 defaults.
struct OptionLine {
    FrequencyUnit unit = FrequencyUnit::GHz;
    DataFormat format = DataFormat::MA;
    double reference_impedance = 50.0;
};

struct ParseOptions {
    /// Sort rows whose frequencies are out of order instead of failing. Duplicates still fail.
    bool tolerate_unsorted = false;
    /// 1 or 2 to enforce a port count; 0 infers it from the first data row.
    int expected_ports = 0;
};

struct ParsedTrace {
    SParamTrace trace;
    OptionLine options;
    std::vector<std::string> warnings;  // e.g. empty data section, rows re-sorted
};

namespace detail {

inline std::string upper(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return out;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

inline OptionLine parse_option_line(std::string_view body, std::size_t line) {
    OptionLine opt;
    const auto toks = split_ws(body);
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const std::string t = upper(toks[i]);
        if (t == "HZ") opt.unit = FrequencyUnit::Hz;
        else if (t == "KHZ") opt.unit = FrequencyUnit::kHz;
        else if (t == "MHZ") opt.unit = FrequencyUnit::MHz;
        else if (t == "GHZ") opt.unit = FrequencyUnit::GHz;
        else if (t == "S") continue;
        else if (t == "Y" || t == "Z" || t == "H" || t == "G")
            throw UnsupportedFormat("parameter type " + t + " is not supported; only S-parameters", line);
        else if (t == "DB") opt.format = DataFormat::DB;
        else if (t == "MA") opt.format = DataFormat::MA;
        else if (t == "RI") opt.format = DataFormat::RI;
        else if (t == "R") {
            if (i + 1 >= toks.size()) throw ParseError("malformed option line: R without impedance", line);
            double z = 0.0;
            if (!omegares::detail::parse_double(toks[++i], z) || !(z > 0.0))
                throw ParseError("malformed option line: bad reference impedance '" + std::string(toks[i]) + "'", line);
            opt.reference_impedance = z;
        } else {
            throw ParseError("malformed option line: unknown token '" + std::string(toks[i]) + "'", line);
        }
    }
    return opt;
}

// Reads a decimal frequency token in Hz by shifting its exponent, so the value is rounded once
// and "4280 MHz" and "4.28 GHz" give the same double.
inline bool parse_frequency(std::string_view tok, FrequencyUnit unit, double& hz) {
    std::string_view mant = tok;
    long exp10 = 0;
    if (const auto e = tok.find_first_of("eE"); e != std::string_view::npos) {
        mant = tok.substr(0, e);
        std::string_view ex = tok.substr(e + 1);
        if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
        const auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exp10);
        if (ec != std::errc() || ptr != ex.data() + ex.size()) return false;
    }
    const std::string shifted = std::string(mant) + "e" + std::to_string(exp10 + unit_exponent(unit));
    return omegares::detail::parse_double(shifted, hz);
}

inline complex decode_pair(double a, double b, DataFormat f) {
    switch (f) {
        case DataFormat::DB: return sparams::from_db_angle(a, b);
        case DataFormat::MA: return sparams::from_mag_angle(a, b);
        case DataFormat::RI: return {a, b};
    }
    return {a, b};
}

}  // namespace detail

inline ParsedTrace parse_touchstone(std::istream& in, const ParseOptions& popts = {}) {
    ParsedTrace out;
    std::optional<OptionLine> option;
    int ports = popts.expected_ports;
    if (ports != 0 && ports != 1 && ports != 2) throw DomainError("expected_ports must be 0, 1 or 2");

    std::vector<double> freqs;
    std::vector<SPoint> points;
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string_view line(raw);
        if (const auto bang = line.find('!'); bang != std::string_view::npos) line = line.substr(0, bang);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '[')
            throw UnsupportedFormat("Touchstone 2.0 keyword " + std::string(line) + " found; only version 1.0 files are supported",
                                    lineno);
        if (line.front() == '#') {
            if (!option) option = detail::parse_option_line(line.substr(1), lineno);
            else out.warnings.push_back("line " + std::to_string(lineno) + ": extra option line ignored");
            continue;
        }
        if (!option) option = OptionLine{};
        const auto toks = detail::split_ws(line);
        std::vector<double> v(toks.size());
        for (std::size_t i = 0; i < toks.size(); ++i)
            if (!omegares::detail::parse_double(toks[i], v[i]) || !std::isfinite(v[i]))
                throw ParseError("non-numeric token '" + std::string(toks[i]) + "'", lineno);
        if (ports == 0) {
            if (v.size() == 3) ports = 1;
            else if (v.size() == 9) ports = 2;
            else
                throw ParseError("expected 3 (1-port) or 9 (2-port) columns, got " + std::to_string(v.size()), lineno);
        }
        const std::size_t want = ports == 1 ? 3 : 9;
        if (v.size() != want)
            throw ParseError("expected " + std::to_string(want) + " columns, got " + std::to_string(v.size()), lineno);

        SPoint p;
        p.s11 = detail::decode_pair(v[1], v[2], option->format);
        if (ports == 2) {
            p.s21 = detail::decode_pair(v[3], v[4], option->format);
            p.s12 = detail::decode_pair(v[5], v[6], option->format);
            p.s22 = detail::decode_pair(v[7], v[8], option->format);
        }
        double f = 0.0;
        if (!detail::parse_frequency(toks[0], option->unit, f) || !std::isfinite(f))
            throw ParseError("non-numeric token '" + std::string(toks[0]) + "'", lineno);
        if (!freqs.empty() && !(f > freqs.back()) && !popts.tolerate_unsorted)
            throw ParseError("frequency " + omegares::detail::format_general(f, 12) + " Hz is not above the previous row", lineno);
        freqs.push_back(f);
        points.push_back(p);
    }
    out.options = option.value_or(OptionLine{});
    if (ports == 0) ports = 1;

    if (popts.tolerate_unsorted && !std::is_sorted(freqs.begin(), freqs.end())) {
        std::vector<std::size_t> idx(freqs.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return freqs[a] < freqs[b]; });
        std::vector<double> f2;
        std::vector<SPoint> p2;
        for (std::size_t i : idx) {
            f2.push_back(freqs[i]);
            p2.push_back(points[i]);
        }
        freqs.swap(f2);
        points.swap(p2);
        out.warnings.emplace_back("rows were not in increasing frequency order and have been sorted");
    }
    for (std::size_t i = 1; i < freqs.size(); ++i)
        if (!(freqs[i] > freqs[i - 1])) throw ParseError("duplicate frequency " + omegares::detail::format_general(freqs[i], 12) + " Hz");

    if (freqs.empty()) out.warnings.emplace_back("file contains no data rows");
    out.trace = SParamTrace(std::move(freqs), std::move(points), ports, out.options.reference_impedance);
    return out;
}

inline ParsedTrace parse_touchstone(std::string_view text, const ParseOptions& popts = {}) {
    std::istringstream in{std::string(text)};
    return parse_touchstone(in, popts);
}

namespace detail {

// Magnitudes below this are written as this floor in DB format (0 has no dB value).
inline constexpr double db_floor = -400.0;

inline void append_pair(std::string& row, complex s, DataFormat f) {
    double a = 0.0, b = 0.0;
    switch (f) {
        case DataFormat::DB: {
            const double m = std::abs(s);
            a = m > 0.0 ? std::max(20.0 * std::log10(m), db_floor) : db_floor;
            b = sparams::angle_deg(s);
            break;
        }
        case DataFormat::MA:
            a = std::abs(s);
            b = sparams::angle_deg(s);
            break;
        case DataFormat::RI:
            a = s.real();
            b = s.imag();
            break;
    }
    row += ' ';
    row += omegares::detail::format_sci(a);
    row += ' ';
    row += omegares::detail::format_sci(b);
}

}  // namespace detail

/// Version-1 text. Values carry 13 significant digits, so parse(write(t)) reproduces t to ~1e−12.
inline std::string write_touchstone(const SParamTrace& trace, DataFormat format = DataFormat::MA,
                                    FrequencyUnit unit = FrequencyUnit::GHz) {
    std::string out;
    out += "! ";
    out += trace.ports() == 1 ? "1-port" : "2-port";
    out += " S-parameters";
    if (trace.magnitude_only()) out += " (magnitude only, phase set to 0)";
    out += "\n# ";
    out += unit_name(unit);
    out += " S ";
    out += format_name(format);
    out += " R ";
    out += omegares::detail::format_shortest(trace.reference_impedance());
    out += '\n';
    const double scale = unit_scale(unit);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const SPoint& p = trace.data()[i];
        std::string row = omegares::detail::format_sci(trace.frequencies()[i] / scale);
        detail::append_pair(row, p.s11, format);
        if (trace.ports() == 2) {
            detail::append_pair(row, p.s21, format);
            detail::append_pair(row, p.s12, format);
            detail::append_pair(row, p.s22, format);
        }
        out += row;
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------------------------
// CSV sidecar: mandatory header "frequency_hz,s11_db" or "frequency_hz,s11_db,s21_db".
// Magnitudes only; a two-column-pair file is read as a symmetric reciprocal two-port.

inline SParamTrace parse_csv(std::istream& in) {
    std::string raw;
    std::size_t lineno = 0;
    int ports = 0;
    std::vector<double> freqs;
    std::vector<SPoint> points;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string c; std::getline(ss, c, ',');) {
            const auto b = c.find_first_not_of(" \t");
            const auto e = c.find_last_not_of(" \t");
            cells.push_back(b == std::string::npos ? std::string() : c.substr(b, e - b + 1));
        }
        if (ports == 0) {
            if (cells == std::vector<std::string>{"frequency_hz", "s11_db"}) ports = 1;
            else if (cells == std::vector<std::string>{"frequency_hz", "s11_db", "s21_db"}) ports = 2;
            else throw ParseError("CSV header must be 'frequency_hz,s11_db[,s21_db]'", lineno);
            continue;
        }
        if (cells.size() != static_cast<std::size_t>(ports + 1))
            throw ParseError("expected " + std::to_string(ports + 1) + " columns, got " + std::to_string(cells.size()),
                             lineno);
        std::vector<double> v(cells.size());
        for (std::size_t i = 0; i < cells.size(); ++i)
            if (!omegares::detail::parse_double(cells[i], v[i]))
                throw ParseError("non-numeric cell '" + cells[i] + "'", lineno);
        if (!freqs.empty() && !(v[0] > freqs.back())) throw ParseError("frequencies must be strictly increasing", lineno);
        SPoint p;
        p.s11 = sparams::db_to_linear(v[1]);
        p.s22 = p.s11;
        if (ports == 2) {
            p.s21 = sparams::db_to_linear(v[2]);
            p.s12 = p.s21;
        }
        freqs.push_back(v[0]);
        points.push_back(p);
    }
    if (ports == 0) throw ParseError("CSV file has no header row");
    return SParamTrace(std::move(freqs), std::move(points), ports, 50.0, true);
}

inline SParamTrace parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_csv(in);
}

inline std::string write_csv(const SParamTrace& trace) {
    std::string out = trace.ports() == 2 ? "frequency_hz,s11_db,s21_db\n" : "frequency_hz,s11_db\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& p = trace.data()[i];
        out += omegares::detail::format_sci(trace.frequencies()[i]);
        out += ',';
        out += omegares::detail::format_sci(std::max(sparams::db_magnitude(p.s11), detail::db_floor));
        if (trace.ports() == 2) {
            out += ',';
            out += omegares::detail::format_sci(std::max(sparams::db_magnitude(p.s21), detail::db_floor));
        }
        out += '\n';
    }
    return out;
}

}  // namespace omegares::touchstone
