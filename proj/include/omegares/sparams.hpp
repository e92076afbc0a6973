#pragma once

// Frequency-domain scattering data of a one- or two-port network.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "omegares/errors.hpp"

namespace omegares::sparams {

using complex = std::complex<double>;

struct SPoint {
    complex s11{};
    complex s21{};
    complex s12{};
    complex s22{};
};

/// Immutable trace. Frequencies are in Hz and strictly increasing; for a one-port trace only
/// `s11` is meaningful. `magnitude_only` marks data without phase (e.g. the CSV sidecar).
class SParamTrace {
public:
    SParamTrace() = default;

    SParamTrace(std::vector<double> frequencies, std::vector<SPoint> data, int ports,
                double reference_impedance = 50.0, bool magnitude_only = false)
        : frequencies_(std::move(frequencies)),
          data_(std::move(data)),
          ports_(ports),
          reference_impedance_(reference_impedance),
          magnitude_only_(magnitude_only) {
        if (ports_ != 1 && ports_ != 2) throw DomainError("port count must be 1 or 2");
        if (frequencies_.size() != data_.size()) throw DomainError("frequency and data lengths differ");
        detail::require_positive(reference_impedance_, "reference impedance");
        for (std::size_t i = 0; i < frequencies_.size(); ++i) {
            if (!std::isfinite(frequencies_[i])) throw DomainError("non-finite frequency");
            if (i > 0 && !(frequencies_[i] > frequencies_[i - 1]))
                throw DomainError("frequencies must be strictly increasing");
        }
    }

    const std::vector<double>& frequencies() const noexcept { return frequencies_; }
    const std::vector<SPoint>& data() const noexcept { return data_; }
    int ports() const noexcept { return ports_; }
    double reference_impedance() const noexcept { return reference_impedance_; }
    bool magnitude_only() const noexcept { return magnitude_only_; }
    std::size_t size() const noexcept { return frequencies_.size(); }
    bool empty() const noexcept { return frequencies_.empty(); }

private:
    std::vector<double> frequencies_;
    std::vector<SPoint> data_;
    int ports_ = 1;
    double reference_impedance_ = 50.0;
    bool magnitude_only_ = false;
};

/// 20·log10|s|; −∞ for s = 0.
inline double db_magnitude(complex s) {
    const double m = std::abs(s);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(m);
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 20.0); }

inline double angle_deg(complex s) { return std::arg(s) * 180.0 / std::numbers::pi; }

inline complex from_mag_angle(double magnitude, double angle_deg) {
    return std::polar(magnitude, angle_deg * std::numbers::pi / 180.0);
}

inline complex from_db_angle(double db, double angle_deg) { return from_mag_angle(db_to_linear(db), angle_deg); }

}  // namespace omegares::sparams
