#pragma once

// Parsing of quantities with unit suffixes ("2.93GHz", "50 ns", "680mW") into SI base units.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <utility>

#include "omegares/detail/format.hpp"
#include "omegares/errors.hpp"

namespace omegares::units {

enum class Dimension { Frequency, Time, Power, Length, FluxDensity };

inline std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::Frequency: return "frequency";
        case Dimension::Time: return "time";
        case Dimension::Power: return "power";
        case Dimension::Length: return "length";
        case Dimension::FluxDensity: return "flux density";
    }
    return "?";
}

/// Malformed quantity text or a unit of the wrong dimension.
class UnitError : public DomainError {
public:
    using DomainError::DomainError;
};

namespace impl {

struct Suffix {
    std::string_view text;
    Dimension dim;
    double scale;
};

// Longer suffixes first so that "ms" is not read as "s" after an "m" prefix check.
inline constexpr std::array<Suffix, 22> suffixes{{
    {"GHz", Dimension::Frequency, 1e9},  {"MHz", Dimension::Frequency, 1e6},
    {"kHz", Dimension::Frequency, 1e3},  {"Hz", Dimension::Frequency, 1.0},
    {"ms", Dimension::Time, 1e-3},       {"us", Dimension::Time, 1e-6},
    {"\xC2\xB5s", Dimension::Time, 1e-6}, {"ns", Dimension::Time, 1e-9},
    {"ps", Dimension::Time, 1e-12},      {"s", Dimension::Time, 1.0},
    {"mW", Dimension::Power, 1e-3},      {"W", Dimension::Power, 1.0},
    {"mm", Dimension::Length, 1e-3},     {"um", Dimension::Length, 1e-6},
    {"\xC2\xB5m", Dimension::Length, 1e-6}, {"nm", Dimension::Length, 1e-9},
    {"m", Dimension::Length, 1.0},       {"mT", Dimension::FluxDensity, 1e-3},
    {"uT", Dimension::FluxDensity, 1e-6}, {"\xC2\xB5T", Dimension::FluxDensity, 1e-6},
    {"T", Dimension::FluxDensity, 1.0},  {"dBm", Dimension::Power, 0.0},
}};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

inline bool ends_with(std::string_view s, std::string_view suf) {
    return s.size() >= suf.size() && s.substr(s.size() - suf.size()) == suf;
}

}  // namespace impl

/// Parses `text` as a quantity of dimension `dim`. A bare number is taken as SI already.
/// Powers also accept dBm. Throws UnitError on malformed input or a suffix of another dimension.
inline double parse(std::string_view text, Dimension dim) {
    const std::string_view s = impl::trim(text);
    if (s.empty()) throw UnitError("empty " + std::string(to_string(dim)) + " value");
    for (const auto& suf : impl::suffixes) {
        if (!impl::ends_with(s, suf.text)) continue;
        const std::string_view num = impl::trim(s.substr(0, s.size() - suf.text.size()));
        // "5mm" ends with "m" too; only accept a match whose remainder is a number
        double v = 0.0;
        if (!detail::parse_double(num, v)) continue;
        if (suf.dim != dim)
            throw UnitError("'" + std::string(s) + "' is a " + std::string(to_string(suf.dim)) + ", expected a " +
                              std::string(to_string(dim)));
        if (suf.text == "dBm") return 1e-3 * std::pow(10.0, v / 10.0);
        return v * suf.scale;
    }
    double v = 0.0;
    if (!detail::parse_double(s, v))
        throw UnitError("cannot parse " + std::string(to_string(dim)) + " '" + std::string(s) + "'");
    return v;
}

inline double frequency(std::string_view s) { return parse(s, Dimension::Frequency); }
inline double duration(std::string_view s) { return parse(s, Dimension::Time); }
inline double power(std::string_view s) { return parse(s, Dimension::Power); }
inline double length(std::string_view s) { return parse(s, Dimension::Length); }
inline double flux_density(std::string_view s) { return parse(s, Dimension::FluxDensity); }

}  // namespace omegares::units
