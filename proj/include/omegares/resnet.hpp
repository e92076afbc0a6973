#pragma once

// Lumped model of a half-wave resonator coupled symmetrically to two feed lines
// (Transmission) or to one feed line with the far port open (Reflection).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string_view>

#include "omegares/errors.hpp"

namespace omegares::resnet {

using complex = std::complex<double>;

enum class Mode { Transmission, Reflection };

inline std::string_view to_string(Mode m) { return m == Mode::Transmission ? "transmission" : "reflection"; }

struct ResonatorParams {
    double resonance_frequency = 2.93e9;  // Hz
    double unloaded_q = 74.0;
    double coupling = 11.5;  // β, identical for input and output in Transmission mode
    Mode mode = Mode::Transmission;

    void validate() const {
        detail::require_positive(resonance_frequency, "resonance frequency");
        detail::require_positive(unloaded_q, "unloaded Q");
        detail::require_positive(coupling, "coupling");
    }
};

/// Γ and T at one frequency. `t` is empty in Reflection mode.
struct ComplexSPair {
    complex gamma;
    std::optional<complex> t;
};

/// ξ = Q₀ (ν₀/ν − ν/ν₀).
inline double normalized_offset(const ResonatorParams& p, double frequency) {
    p.validate();
    if (!(frequency > 0.0)) throw DomainError("frequency must be positive");
    const double x = frequency / p.resonance_frequency;
    return p.unloaded_q * (1.0 / x - x);
}

/// Γ = −(1 − iξ)/(1 + 2β − iξ), T = 2β/(1 + 2β − iξ).
inline ComplexSPair two_port_response(const ResonatorParams& p, double frequency) {
    if (p.mode != Mode::Transmission) throw ModeMismatch("two_port_response requires Transmission mode");
    const double xi = normalized_offset(p, frequency);
    const complex den(1.0 + 2.0 * p.coupling, -xi);
    return {-complex(1.0, -xi) / den, complex(2.0 * p.coupling, 0.0) / den};
}

/// Γ = −(1 − β − iξ)/(1 + β + iξ).
inline complex one_port_response(const ResonatorParams& p, double frequency) {
    if (p.mode != Mode::Reflection) throw ModeMismatch("one_port_response requires Reflection mode");
    const double xi = normalized_offset(p, frequency);
    return -complex(1.0 - p.coupling, -xi) / complex(1.0 + p.coupling, xi);
}

/// Mode-dispatching convenience over the two lineshapes.
inline ComplexSPair response(const ResonatorParams& p, double frequency) {
    if (p.mode == Mode::Transmission) return two_port_response(p, frequency);
    return {one_port_response(p, frequency), std::nullopt};
}

/// R² = 1 − |Γ|² − |T|²: the share of incident power delivered to the resonator.
inline double absorbed_fraction(const ResonatorParams& p, double frequency) {
    const ComplexSPair s = response(p, frequency);
    double r2 = 1.0 - std::norm(s.gamma);
    if (s.t) r2 -= std::norm(*s.t);
    return r2 < 0.0 ? 0.0 : r2;
}

/// R(ν₀): 2√β/(1+2β) in Transmission, 2√β/(1+β) in Reflection.
inline double peak_field_factor(const ResonatorParams& p) {
    p.validate();
    const double b = p.coupling;
    const double den = p.mode == Mode::Transmission ? 1.0 + 2.0 * b : 1.0 + b;
    return 2.0 * std::sqrt(b) / den;
}

/// Full width at half power, (1+2β)ν₀/Q₀ or (1+β)ν₀/Q₀. First order in Δν/ν₀.
inline double bandwidth(const ResonatorParams& p) {
    p.validate();
    const double b = p.coupling;
    const double loading = p.mode == Mode::Transmission ? 1.0 + 2.0 * b : 1.0 + b;
    return loading / p.unloaded_q * p.resonance_frequency;
}

/// Loaded quality factor ν₀/Δν.
inline double loaded_q(const ResonatorParams& p) { return p.resonance_frequency / bandwidth(p); }

inline double ringing_time(double bandwidth_hz) {
    detail::require_positive(bandwidth_hz, "bandwidth");
    return 1.0 / (std::numbers::pi * bandwidth_hz);
}

/// β = Q₀ Z_R / Z_L for a width-step coupled resonator. High-Q form: the reflection-line
/// limit Z_R = Z_L returns Q₀, not Q₀ − 1.
inline double coupling_from_impedances(double unloaded_q, double z_resonator, double z_line) {
    detail::require_positive(unloaded_q, "unloaded Q");
    detail::require_positive(z_resonator, "resonator impedance");
    detail::require_positive(z_line, "line impedance");
    return unloaded_q * z_resonator / z_line;
}

/// Reflection at a width step seen from the feed line, −(Z_L − Z_R)/(Z_L + Z_R).
inline double step_reflection(double z_line, double z_resonator) {
    detail::require_positive(z_line, "line impedance");
    detail::require_positive(z_resonator, "resonator impedance");
    return -(z_line - z_resonator) / (z_line + z_resonator);
}

/// Relative loop field of an open-ended line with the loop a quarter wave from the open end:
/// sin(πν / (2ν₀)).
inline double reflection_line_rolloff(double frequency, double resonance_frequency) {
    detail::require_positive(resonance_frequency, "resonance frequency");
    if (!(frequency >= 0.0) || frequency > 2.0 * resonance_frequency)
        throw DomainError("frequency must lie in [0, 2ν₀]");
    return std::sin(0.5 * std::numbers::pi * frequency / resonance_frequency);
}

}  // namespace omegares::resnet
