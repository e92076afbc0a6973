#pragma once

// Confocal collection through the resonator's optical access hole. Angles in radians.

#include <cmath>
#include <numbers>

#include "omegares/errors.hpp"

namespace omegares::optics {

struct ObjectiveSpec {
    double numerical_aperture = 1.4;
    double immersion_index = 1.518;
    double working_distance = 0.34e-3;  // informational

    void validate() const {
        detail::require_positive(numerical_aperture, "numerical aperture");
        if (numerical_aperture > immersion_index)
            throw DomainError("numerical aperture exceeds the immersion index");
    }
};

inline double deg(double rad) { return rad * 180.0 / std::numbers::pi; }
inline double rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Half-angle of the collection cone, asin(NA/n).
inline double cone_angle_from_na(const ObjectiveSpec& obj) {
    obj.validate();
    return std::asin(obj.numerical_aperture / obj.immersion_index);
}

/// Fraction of isotropic emission inside a cone of half-angle α: (1 − cos α)/2.
/// Interface reflections are neglected.
inline double collection_efficiency(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 0.5 * std::numbers::pi)) throw DomainError("cone angle must lie in [0, π/2]");
    return 0.5 * (1.0 - std::cos(alpha));
}

/// Edge-ray half-angle through a hole of diameter D in a stack of thickness t, emitter on axis
/// at the far face: atan(D / 2t).
inline double cone_angle_from_hole(double hole_diameter, double stack_thickness) {
    detail::require_positive(hole_diameter, "hole diameter");
    detail::require_positive(stack_thickness, "stack thickness");
    return std::atan(0.5 * hole_diameter / stack_thickness);
}

inline double hole_for_angle(double alpha, double stack_thickness) {
    if (!(alpha > 0.0 && alpha < 0.5 * std::numbers::pi)) throw DomainError("cone angle must lie in (0, π/2)");
    detail::require_positive(stack_thickness, "stack thickness");
    return 2.0 * stack_thickness * std::tan(alpha);
}

/// Rescales a measured spot width between aperture angles: fwhm · sin(α_r)/sin(α_f).
inline double resolution_rescale(double fwhm, double alpha_restricted, double alpha_full) {
    detail::require_positive(fwhm, "FWHM");
    const auto check = [](double a) {
        if (!(a > 0.0 && a <= 0.5 * std::numbers::pi)) throw DomainError("angles must lie in (0, π/2]");
    };
    check(alpha_restricted);
    check(alpha_full);
    return fwhm * std::sin(alpha_restricted) / std::sin(alpha_full);
}

inline double airy_fwhm(double wavelength, double na) {
    detail::require_positive(wavelength, "wavelength");
    detail::require_positive(na, "numerical aperture");
    return 0.51 * wavelength / na;
}

}  // namespace omegares::optics
