#pragma once

// Power-to-field conversion for a wire, an ideal loop, the Ω-loop on a 50 Ω line and
// the loop embedded in a resonator. Fields are amplitudes in A/m; efficiencies in A/(m·√W).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "omegares/errors.hpp"
#include "omegares/resnet.hpp"
#include "omegares/tables.hpp"

namespace omegares::fields {

enum class Provenance { AnalyticBound, Derated, External };

inline std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::AnalyticBound: return "analytic";
        case Provenance::Derated: return "derated";
        case Provenance::External: return "external";
    }
    return "unknown";
}

struct FieldEfficiency {
    double value = 0.0;  // A/(m·√W)
    Provenance provenance = Provenance::AnalyticBound;
    std::optional<double> frequency;  // Hz

    /// Field amplitude produced by `power` watts.
    double field_at(double power) const {
        detail::require_non_negative(power, "power");
        return value * std::sqrt(power);
    }
};

struct LoopSpec {
    double inner_diameter = 0.4e-3;
    double conductor_width = 0.1e-3;
    double gap = 0.1e-3;
    /// Ratio of the real Ω-loop efficiency to the ideal thin loop of the same diameter.
    double derating = 0.49;

    void validate() const {
        detail::require_positive(inner_diameter, "loop inner diameter");
        detail::require_positive(conductor_width, "loop conductor width");
        detail::require_positive(gap, "loop gap");
        if (!(derating > 0.0 && derating <= 1.0)) throw DomainError("derating must lie in (0, 1]");
    }

    Provenance provenance() const { return derating == 1.0 ? Provenance::AnalyticBound : Provenance::Derated; }
};

/// Current amplitude √(2P/Z) carried by a matched line.
inline double line_current(double power, double impedance) {
    detail::require_non_negative(power, "power");
    detail::require_positive(impedance, "impedance");
    return std::sqrt(2.0 * power / impedance);
}

/// Tangential field I/(2πr) outside a straight wire.
inline double wire_field(double power, double impedance, double r) {
    if (!(r > 0.0)) throw DomainError("distance from the wire axis must be positive");
    return line_current(power, impedance) / (2.0 * std::numbers::pi * r);
}

/// Field I/D at the centre of a thin circular loop.
inline double ideal_loop_field(double power, double impedance, double diameter) {
    detail::require_positive(diameter, "loop diameter");
    return line_current(power, impedance) / diameter;
}

/// Loop on a non-resonant line: derating · (1/D) √(2/Z).
inline FieldEfficiency loop_efficiency(const LoopSpec& loop, double impedance) {
    loop.validate();
    detail::require_positive(impedance, "impedance");
    const double ideal = std::sqrt(2.0 / impedance) / loop.inner_diameter;
    return {loop.derating * ideal, loop.provenance(), std::nullopt};
}

/// Loop inside the resonator, exact small-loop form
/// R(ν₀) · √Q₀ · (1/D) √(2/Z_R) · derating.
inline FieldEfficiency resonant_efficiency(const resnet::ResonatorParams& params, double z_resonator,
                                           const LoopSpec& loop) {
    params.validate();
    loop.validate();
    detail::require_positive(z_resonator, "resonator impedance");
    const double value = resnet::peak_field_factor(params) * std::sqrt(params.unloaded_q) *
                         std::sqrt(2.0 / z_resonator) / loop.inner_diameter * loop.derating;
    return {value, loop.provenance(), params.resonance_frequency};
}

/// β ≫ 1 limit, independent of Q₀: (Z_L/Z_R) · (1/D)√(2/Z_L), doubled in Reflection mode.
inline FieldEfficiency high_beta_efficiency(resnet::Mode mode, double z_line, double z_resonator,
                                            const LoopSpec& loop) {
    loop.validate();
    detail::require_positive(z_line, "line impedance");
    detail::require_positive(z_resonator, "resonator impedance");
    const double line = std::sqrt(2.0 / z_line) / loop.inner_diameter * loop.derating;
    const double gain = (mode == resnet::Mode::Reflection ? 2.0 : 1.0) * z_line / z_resonator;
    return {gain * line, loop.provenance(), std::nullopt};
}

/// On-axis field of a current loop of effective diameter D: h0 · D³ / (4z² + D²)^(3/2).
inline double axial_decay(double h0, double d_eff, double z) {
    detail::require_positive(d_eff, "effective diameter");
    const double d2 = d_eff * d_eff;
    return h0 * d_eff * d2 / std::pow(4.0 * z * z + d2, 1.5);
}

inline double loop_power_loss(double current, double loop_resistance) {
    detail::require_non_negative(current, "current");
    detail::require_non_negative(loop_resistance, "loop resistance");
    return 0.5 * current * current * loop_resistance;
}

struct AxialSample {
    double z;  // m
    double h;  // A/m
};

struct AxialFit {
    double h0;
    double d_eff;
    double residual_rms;  // A/m
};

namespace impl {

// Least-squares amplitude for a fixed diameter and the resulting sum of squares.
inline std::pair<double, double> profile(std::span<const AxialSample> s, double d) {
    double hg = 0.0, gg = 0.0;
    for (const auto& p : s) {
        const double g = axial_decay(1.0, d, p.z);
        hg += p.h * g;
        gg += g * g;
    }
    const double h0 = hg / gg;
    double ssr = 0.0;
    for (const auto& p : s) {
        const double r = p.h - h0 * axial_decay(1.0, d, p.z);
        ssr += r * r;
    }
    return {h0, ssr};
}

}  // namespace impl

/// Fit (h0, D) of axial_decay to sampled on-axis fields. h0 enters linearly and is eliminated;
/// D is found by a log-spaced scan followed by golden-section refinement.
inline AxialFit fit_effective_diameter(std::span<const AxialSample> samples) {
    if (samples.size() < 3) throw FitError("need at least 3 samples to fit the axial decay");
    double zmin = std::numeric_limits<double>::infinity(), zmax = 0.0;
    for (const auto& s : samples) {
        if (!std::isfinite(s.z) || !std::isfinite(s.h)) throw FitError("non-finite sample");
        zmin = std::min(zmin, std::abs(s.z));
        zmax = std::max(zmax, std::abs(s.z));
    }
    if (zmax - zmin <= 1e-12 * std::max(zmax, 1e-300)) throw FitError("samples need at least two distinct |z|");

    const double lo = std::log(zmax * 1e-3), hi = std::log(zmax * 1e3);
    constexpr int scan = 400;
    int best = 0;
    double best_ssr = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= scan; ++i) {
        const double ssr = impl::profile(samples, std::exp(lo + (hi - lo) * i / scan)).second;
        if (ssr < best_ssr) {
            best_ssr = ssr;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(best - 1, 0) / scan;
    double b = lo + (hi - lo) * std::min(best + 1, scan) / scan;
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - invphi * (b - a), d = a + invphi * (b - a);
    double fc = impl::profile(samples, std::exp(c)).second, fd = impl::profile(samples, std::exp(d)).second;
    for (int it = 0; it < 200 && (b - a) > 1e-13; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = impl::profile(samples, std::exp(c)).second;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = impl::profile(samples, std::exp(d)).second;
        }
    }
    const double d_eff = std::exp(0.5 * (a + b));
    const auto [h0, ssr] = impl::profile(samples, d_eff);
    return {h0, d_eff, std::sqrt(ssr / static_cast<double>(samples.size()))};
}

/// Efficiency for a given loop conductor width from the bundled EM table (provenance External).
inline FieldEfficiency efficiency_from_conductor_width(const tables::Table& table, double conductor_width) {
    return {tables::interpolate(table, "conductor_width_m", "efficiency", conductor_width), Provenance::External,
            std::nullopt};
}

}  // namespace omegares::fields
