#pragma once

// Locale-independent number formatting on top of std::to_chars.

#include <array>
#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

namespace omegares::detail {

inline std::string to_chars_string(double v, std::chars_format fmt, int precision) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, fmt, precision);
    return std::string(buf.data(), res.ptr);
}

/// Scientific notation with `digits` digits after the point, e.g. 4.166666666667e-02.
inline std::string format_sci(double v, int digits = 12) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    return to_chars_string(v, std::chars_format::scientific, digits);
}

inline std::string format_fixed(double v, int digits) {
    if (v == 0.0) v = 0.0;
    return to_chars_string(v, std::chars_format::fixed, digits);
}

/// Shortest text that reads back to the same double.
inline std::string format_shortest(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// `sig` significant digits, fixed or scientific, whichever is shorter.
inline std::string format_general(double v, int sig = 6) {
    return to_chars_string(v, std::chars_format::general, sig);
}

/// Parses a whole token as a double; '.' is the only decimal separator.
inline bool parse_double(std::string_view tok, double& out) {
    if (tok.empty()) return false;
    if (tok.front() == '+') tok.remove_prefix(1);
    const char* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, out);
    return ec == std::errc() && ptr == end;
}

}  // namespace omegares::detail
