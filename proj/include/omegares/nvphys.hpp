#pragma once

// NV-centre ground-state spin physics used to turn Rabi frequencies into drive fields
// and microwave power budgets.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>

#include "omegares/constants.hpp"
#include "omegares/errors.hpp"
#include "omegares/fields.hpp"
#include "omegares/hermitian_eigen.hpp"

namespace omegares::nvphys {

using Vec3 = std::array<double, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

struct NVConfig {
    double zero_field_splitting = constants::nv_zero_field_splitting;  // Hz
    double gyromagnetic_ratio = constants::nv_gyromagnetic_ratio;      // Hz/T
    Vec3 nv_axis = {1.0 / std::numbers::sqrt3, 1.0 / std::numbers::sqrt3, 1.0 / std::numbers::sqrt3};
    /// Rabi frequency per unit γµ₀H. 1/√3 for a [001] drive field and a [111] NV axis:
    /// √(2/3) transverse projection × √2 (one transition of S = 1) ÷ 2 (rotating frame).
    double drive_projection = 1.0 / std::numbers::sqrt3;

    void validate() const {
        detail::require_positive(zero_field_splitting, "zero-field splitting");
        detail::require_positive(gyromagnetic_ratio, "gyromagnetic ratio");
        if (std::abs(norm(nv_axis) - 1.0) > 1e-9) throw DomainError("nv_axis must be a unit vector");
        if (!(drive_projection > 0.0 && drive_projection <= 1.0)) throw DomainError("drive_projection must lie in (0, 1]");
    }
};

/// Static field in tesla.
struct FieldVector {
    Vec3 components{};

    static FieldVector along(const Vec3& direction, double magnitude) {
        const double n = norm(direction);
        if (!(n > 0.0)) throw DomainError("field direction must be non-zero");
        return {{direction[0] / n * magnitude, direction[1] / n * magnitude, direction[2] / n * magnitude}};
    }
};

inline double rabi_from_field(double h, const NVConfig& cfg = {}) {
    cfg.validate();
    detail::require_non_negative(h, "field amplitude");
    return cfg.gyromagnetic_ratio * constants::mu0 * h * cfg.drive_projection;
}

/// Drive field implied by a Rabi frequency measured at `power`, rescaled to `reference_power`.
inline double field_from_rabi(double f_rabi, double power, double reference_power, const NVConfig& cfg = {}) {
    cfg.validate();
    detail::require_non_negative(f_rabi, "Rabi frequency");
    detail::require_positive(power, "power");
    detail::require_positive(reference_power, "reference power");
    const double h = f_rabi / (cfg.gyromagnetic_ratio * constants::mu0 * cfg.drive_projection);
    return h * std::sqrt(reference_power / power);
}

inline double pi_pulse_duration(double f_rabi) {
    detail::require_positive(f_rabi, "Rabi frequency");
    return 0.5 / f_rabi;
}

/// Spectral width 1.2/t_π covered by a rectangular π-pulse.
inline double excitation_bandwidth(double t_pi) {
    detail::require_positive(t_pi, "pulse duration");
    return 1.2 / t_pi;
}

/// Input power that yields a π-pulse of duration t_pi with the given conversion efficiency.
inline double power_for_pi(double t_pi, const fields::FieldEfficiency& efficiency, const NVConfig& cfg = {}) {
    detail::require_positive(efficiency.value, "efficiency");
    const double h = field_from_rabi(0.5 / t_pi, 1.0, 1.0, cfg);
    const double root = h / efficiency.value;
    return root * root;
}

/// Spin-1 Hamiltonian H/h = D Sz² + γ B·S in the NV frame, basis (|+1⟩, |0⟩, |−1⟩), in Hz.
inline linalg::CMatrix<3> ground_state_hamiltonian(const FieldVector& b, const NVConfig& cfg) {
    using cd = std::complex<double>;
    const Vec3& n = cfg.nv_axis;
    // any unit vector orthogonal to the axis completes a right-handed frame
    const Vec3 seed = std::abs(n[0]) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
    Vec3 e1 = cross(seed, n);
    const double l = norm(e1);
    for (double& x : e1) x /= l;
    const Vec3 e2 = cross(n, e1);

    const double g = cfg.gyromagnetic_ratio;
    const double bx = g * dot(b.components, e1), by = g * dot(b.components, e2), bz = g * dot(b.components, n);
    const double d = cfg.zero_field_splitting;
    const double r = 1.0 / std::numbers::sqrt2;
    const cd s_minus(bx * r, by * r);  // ⟨+1|γB·S|0⟩ = ⟨0|γB·S|−1⟩ = conj(s_minus)
    linalg::CMatrix<3> h{};
    h[0][0] = d + bz;
    h[1][1] = 0.0;
    h[2][2] = d - bz;
    h[0][1] = std::conj(s_minus);
    h[1][0] = s_minus;
    h[1][2] = std::conj(s_minus);
    h[2][1] = s_minus;
    return h;
}

struct Transitions {
    double f_minus;  // Hz
    double f_plus;   // Hz
};

/// The two |ΔmS| = 1 transition frequencies out of the level with the largest |0⟩ weight.
inline Transitions transition_frequencies(const FieldVector& b, const NVConfig& cfg = {}) {
    cfg.validate();
    for (double x : b.components)
        if (!std::isfinite(x)) throw DomainError("field components must be finite");
    const auto eig = linalg::jacobi_hermitian<3>(ground_state_hamiltonian(b, cfg));
    std::size_t ground = 0;
    double best = -1.0;
    for (std::size_t k = 0; k < 3; ++k) {
        // values are ascending, so a strict comparison keeps the lower level on ties
        const double w = std::norm(eig.vectors[1][k]);
        if (w > best + 1e-12) {
            best = w;
            ground = k;
        }
    }
    std::array<double, 2> f{};
    std::size_t i = 0;
    for (std::size_t k = 0; k < 3; ++k)
        if (k != ground) f[i++] = std::abs(eig.values[k] - eig.values[ground]);
    if (f[0] > f[1]) std::swap(f[0], f[1]);
    return {f[0], f[1]};
}

/// B∥ = Δν / (2γ), the axial field that splits the two lines by Δν.
inline double axial_field_from_splitting(double delta_nu, const NVConfig& cfg = {}) {
    cfg.validate();
    detail::require_non_negative(delta_nu, "splitting");
    return delta_nu / (2.0 * cfg.gyromagnetic_ratio);
}

}  // namespace omegares::nvphys
