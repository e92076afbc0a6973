#pragma once

// Closed-form microstrip analytics. All lengths in metres, frequencies in Hz.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "omegares/detail/format.hpp"
#include "omegares/constants.hpp"
#include "omegares/errors.hpp"

namespace omegares::txline {

struct SubstrateSpec {
    double rel_permittivity = 3.0;
    double loss_tangent = 0.001;
    double dielectric_thickness = 0.13e-3;
    double cladding_thickness = 18e-6;
    double conductor_resistivity = constants::copper_resistivity;

    /// Rogers RO3003, 0.13 mm dielectric, 18 µm copper on both faces.
    static SubstrateSpec ro3003() { return {}; }

    /// Dielectric plus both copper claddings.
    double stack_thickness() const { return dielectric_thickness + 2.0 * cladding_thickness; }

    void validate() const {
        if (!(rel_permittivity >= 1.0)) throw DomainError("relative permittivity must be >= 1");
        detail::require_positive(dielectric_thickness, "dielectric thickness");
        detail::require_positive(cladding_thickness, "cladding thickness");
        detail::require_non_negative(loss_tangent, "loss tangent");
        detail::require_positive(conductor_resistivity, "conductor resistivity");
    }
};

struct MicrostripSection {
    double width = 3e-3;
    double length = 17e-3;
    SubstrateSpec substrate;

    void validate() const {
        detail::require_positive(width, "strip width");
        detail::require_positive(length, "strip length");
        substrate.validate();
    }
};

/// Quasi-static effective permittivity, (εr+1)/2 + (εr−1)/2 · (1 + 12H/W)^(−1/2).
inline double effective_permittivity(const SubstrateSpec& substrate, double width) {
    substrate.validate();
    detail::require_positive(width, "strip width");
    const double er = substrate.rel_permittivity;
    const double h_over_w = substrate.dielectric_thickness / width;
    return 0.5 * (er + 1.0) + 0.5 * (er - 1.0) / std::sqrt(1.0 + 12.0 * h_over_w);
}

enum class ImpedanceModel {
    /// Hammerstad-Jensen: one expression for all W/H, ~0.2% accurate against quasi-static solvers.
    HammerstadJensen,
    /// Classic wide-strip form 120π / (√εeff · (u + 1.393 + 0.667 ln(u + 1.444))), u = W/H.
    WideStrip,
};

struct ImpedanceOptions {
    ImpedanceModel model = ImpedanceModel::HammerstadJensen;
    /// Accept W/H < 1. Results there are advisory: every geometry in this project has W/H > 2.
    bool allow_narrow = false;
};

namespace impl {

inline double hammerstad_jensen_permittivity(double er, double u) {
    const double u4 = u * u * u * u;
    const double a = 1.0 + std::log((u4 + (u / 52.0) * (u / 52.0)) / (u4 + 0.432)) / 49.0 +
                     std::log(1.0 + std::pow(u / 18.1, 3.0)) / 18.7;
    const double b = 0.564 * std::pow((er - 0.9) / (er + 3.0), 0.053);
    return 0.5 * (er + 1.0) + 0.5 * (er - 1.0) * std::pow(1.0 + 10.0 / u, -a * b);
}

inline double hammerstad_jensen_impedance(double er, double u) {
    const double f = 6.0 + (2.0 * std::numbers::pi - 6.0) * std::exp(-std::pow(30.666 / u, 0.7528));
    const double z_air = constants::eta0 / (2.0 * std::numbers::pi) * std::log(f / u + std::sqrt(1.0 + 4.0 / (u * u)));
    return z_air / std::sqrt(hammerstad_jensen_permittivity(er, u));
}

inline double wide_strip_impedance(const SubstrateSpec& s, double width) {
    const double u = width / s.dielectric_thickness;
    const double eeff = effective_permittivity(s, width);
    if (u >= 1.0)
        return 120.0 * std::numbers::pi / (std::sqrt(eeff) * (u + 1.393 + 0.667 * std::log(u + 1.444)));
    // thin-strip companion form with its permittivity correction
    const double er = s.rel_permittivity;
    const double eeff_narrow = eeff + 0.5 * (er - 1.0) * 0.04 * (1.0 - u) * (1.0 - u);
    return 60.0 / std::sqrt(eeff_narrow) * std::log(8.0 / u + u / 4.0);
}

}  // namespace impl

/// True when the strip is narrower than the dielectric and the impedance is outside the validated range.
inline bool impedance_is_advisory(const SubstrateSpec& substrate, double width) {
    return width < substrate.dielectric_thickness;
}

inline double characteristic_impedance(const SubstrateSpec& substrate, double width, ImpedanceOptions opts = {}) {
    substrate.validate();
    detail::require_positive(width, "strip width");
    const double u = width / substrate.dielectric_thickness;
    if (u < 1.0 && !opts.allow_narrow)
        throw UnsupportedGeometry("W/H = " + detail::format_general(u, 4) + " < 1; enable the narrow-strip branch to evaluate");
    switch (opts.model) {
        case ImpedanceModel::WideStrip:
            return impl::wide_strip_impedance(substrate, width);
        case ImpedanceModel::HammerstadJensen:
        default:
            return impl::hammerstad_jensen_impedance(substrate.rel_permittivity, u);
    }
}

/// Half-wave resonance c / (2 (L + ΔL) √εeff). `loading_length` is the extra electrical
/// length contributed by the loop and gap.
inline double half_wave_frequency(const MicrostripSection& section, double loading_length = 0.0) {
    section.validate();
    detail::require_non_negative(loading_length, "loading length");
    const double eeff = effective_permittivity(section.substrate, section.width);
    return constants::speed_of_light / (2.0 * (section.length + loading_length) * std::sqrt(eeff));
}

/// Physical strip length that resonates at `target`; exact inverse of half_wave_frequency.
inline double length_for_frequency(double target, double width, const SubstrateSpec& substrate,
                                   double loading_length = 0.0) {
    detail::require_positive(target, "target frequency");
    detail::require_non_negative(loading_length, "loading length");
    const double eeff = effective_permittivity(substrate, width);
    const double length = constants::speed_of_light / (2.0 * target * std::sqrt(eeff)) - loading_length;
    if (!(length > 0.0))
        throw InfeasibleDesign("loading length exceeds the electrical length needed for the target frequency");
    return length;
}

/// Loading length that makes a strip of `length` resonate at `frequency` (single-anchor calibration).
inline double calibrate_loading_length(double length, double frequency, double width, const SubstrateSpec& substrate) {
    detail::require_positive(length, "strip length");
    const double total = length_for_frequency(frequency, width, substrate, 0.0);
    if (total < length) throw InfeasibleDesign("anchor frequency is above the unloaded resonance of the strip");
    return total - length;
}

inline double skin_depth(double resistivity, double frequency) {
    detail::require_positive(resistivity, "resistivity");
    detail::require_positive(frequency, "frequency");
    return std::sqrt(resistivity / (std::numbers::pi * frequency * constants::mu0));
}

/// Resistance of a round wire: the larger of the DC value and the skin-effect value ρL/(π d δ).
/// The skin-effect form is only used once the wire is thicker than two skin depths.
inline double round_wire_ac_resistance(double length, double diameter, double resistivity, double frequency) {
    detail::require_positive(length, "wire length");
    detail::require_positive(diameter, "wire diameter");
    detail::require_positive(resistivity, "resistivity");
    detail::require_non_negative(frequency, "frequency");
    const double radius = 0.5 * diameter;
    const double dc = resistivity * length / (std::numbers::pi * radius * radius);
    if (frequency == 0.0) return dc;
    const double delta = skin_depth(resistivity, frequency);
    if (diameter <= 2.0 * delta) return dc;
    const double ac = resistivity * length / (std::numbers::pi * diameter * delta);
    return std::max(dc, ac);
}

}  // namespace omegares::txline
