#pragma once

// Geometry-to-performance composition: resonance, coupling, bandwidths, field efficiencies,
// π-pulse power budgets and optical access, with a provenance note on every number.

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omegares/detail/format.hpp"
#include "omegares/errors.hpp"
#include "omegares/fields.hpp"
#include "omegares/nvphys.hpp"
#include "omegares/optics.hpp"
#include "omegares/resnet.hpp"
#include "omegares/txline.hpp"

namespace omegares::designer {

using fields::Provenance;

struct ResonatorGeometry {
    double feed_width = 0.3e-3;       // W_L
    double resonator_width = 3e-3;    // W_R
    double length = 17e-3;            // L
    double gap = 0.1e-3;              // G
    fields::LoopSpec loop;
    double optical_hole = 0.3e-3;     // D_opt
    txline::SubstrateSpec substrate;
    /// Extra electrical length of the loop and gap; 13.5 mm maps L = 17 mm to 2.93 GHz.
    double loading_length = 13.5e-3;

    /// The fabricated 2.9 GHz design on RO3003.
    static ResonatorGeometry reference_design() { return {}; }

    txline::MicrostripSection resonator_section() const { return {resonator_width, length, substrate}; }

    void validate() const {
        detail::require_positive(feed_width, "feed width");
        detail::require_positive(resonator_width, "resonator width");
        detail::require_positive(length, "resonator length");
        detail::require_positive(gap, "gap");
        detail::require_positive(optical_hole, "optical hole diameter");
        detail::require_non_negative(loading_length, "loading length");
        loop.validate();
        substrate.validate();
        if (!(optical_hole < loop.inner_diameter))
            throw DomainError("optical hole must be smaller than the loop inner diameter");
    }
};

struct DesignOptions {
    double q_unloaded = 74.0;
    /// Nominal feed-line impedance used for coupling and line efficiency.
    double z_line = 50.0;
    /// Resonator impedance from an EM model or measurement; adds the "external" route.
    std::optional<double> z_resonator_external = 10.4;
    double pi_pulse = 50e-9;  // s
    nvphys::NVConfig nv;
    optics::ObjectiveSpec objective;
    txline::ImpedanceOptions impedance;
};

struct Quantity {
    double value = 0.0;
    std::string unit;
    Provenance provenance = Provenance::AnalyticBound;
    std::string note;
};

/// Report keyed by field name. `routes` holds one block per resonator-impedance route
/// ("strip": Z_R from the microstrip formula; "external": user-supplied Z_R).
struct DesignReport {
    std::map<std::string, Quantity> summary;
    std::map<std::string, std::map<std::string, Quantity>> routes;

    const Quantity& at(const std::string& key) const {
        const auto it = summary.find(key);
        if (it == summary.end()) throw DomainError("report has no field '" + key + "'");
        return it->second;
    }
    const Quantity& at(const std::string& route, const std::string& key) const {
        const auto r = routes.find(route);
        if (r == routes.end()) throw DomainError("report has no route '" + route + "'");
        const auto it = r->second.find(key);
        if (it == r->second.end()) throw DomainError("route '" + route + "' has no field '" + key + "'");
        return it->second;
    }
};

namespace impl {

inline std::map<std::string, Quantity> evaluate_route(double nu0, double z_resonator, Provenance z_prov,
                                                      const std::string& z_note, const ResonatorGeometry& g,
                                                      const DesignOptions& o) {
    using resnet::Mode;
    std::map<std::string, Quantity> r;
    const double beta = resnet::coupling_from_impedances(o.q_unloaded, z_resonator, o.z_line);
    const resnet::ResonatorParams pt{nu0, o.q_unloaded, beta, Mode::Transmission};
    const resnet::ResonatorParams pr{nu0, o.q_unloaded, beta, Mode::Reflection};
    const double bw_t = resnet::bandwidth(pt), bw_r = resnet::bandwidth(pr);
    const auto eff_t = fields::resonant_efficiency(pt, z_resonator, g.loop);
    const auto eff_r = fields::resonant_efficiency(pr, z_resonator, g.loop);
    const auto hb_t = fields::high_beta_efficiency(Mode::Transmission, o.z_line, z_resonator, g.loop);
    const auto hb_r = fields::high_beta_efficiency(Mode::Reflection, o.z_line, z_resonator, g.loop);
    const Provenance loop = g.loop.provenance();
    const std::string q_note = "Q0 is an input (" + detail::format_general(o.q_unloaded) + ")";

    r["z_resonator"] = {z_resonator, "ohm", z_prov, z_note};
    r["coupling_by_impedance"] = {beta, "", Provenance::AnalyticBound, "beta = Q0 Z_R / Z_L; " + q_note};
    r["bandwidth_transmission"] = {bw_t, "Hz", Provenance::AnalyticBound, "(1 + 2 beta) nu0 / Q0"};
    r["bandwidth_reflection"] = {bw_r, "Hz", Provenance::AnalyticBound, "(1 + beta) nu0 / Q0"};
    r["ringing_time_transmission"] = {resnet::ringing_time(bw_t), "s", Provenance::AnalyticBound, "1 / (pi bandwidth)"};
    r["ringing_time_reflection"] = {resnet::ringing_time(bw_r), "s", Provenance::AnalyticBound, "1 / (pi bandwidth)"};
    r["efficiency_transmission_exact"] = {eff_t.value, "A/m/sqrt(W)", loop,
                                          "R(nu0) sqrt(Q0) (1/D) sqrt(2/Z_R) x loop derating"};
    r["efficiency_reflection_exact"] = {eff_r.value, "A/m/sqrt(W)", loop,
                                        "R(nu0) sqrt(Q0) (1/D) sqrt(2/Z_R) x loop derating"};
    r["efficiency_transmission_high_beta"] = {hb_t.value, "A/m/sqrt(W)", loop, "(Z_L/Z_R) (1/D) sqrt(2/Z_L) x loop derating"};
    r["efficiency_reflection_high_beta"] = {hb_r.value, "A/m/sqrt(W)", loop, "2 (Z_L/Z_R) (1/D) sqrt(2/Z_L) x loop derating"};
    r["pi_power_transmission"] = {nvphys::power_for_pi(o.pi_pulse, eff_t, o.nv), "W", loop,
                                  "pi-pulse power from the exact transmission efficiency"};
    r["pi_power_reflection"] = {nvphys::power_for_pi(o.pi_pulse, eff_r, o.nv), "W", loop,
                                "pi-pulse power from the exact reflection efficiency"};
    return r;
}

}  // namespace impl

inline DesignReport evaluate_design(const ResonatorGeometry& g, const DesignOptions& o) {
    g.validate();
    detail::require_positive(o.q_unloaded, "unloaded Q");
    detail::require_positive(o.z_line, "line impedance");
    detail::require_positive(o.pi_pulse, "pi-pulse duration");

    DesignReport rep;
    auto& s = rep.summary;
    const double nu0 = txline::half_wave_frequency(g.resonator_section(), g.loading_length);
    const double eeff = txline::effective_permittivity(g.substrate, g.resonator_width);
    const double z_strip = txline::characteristic_impedance(g.substrate, g.resonator_width, o.impedance);
    const double z_feed = txline::characteristic_impedance(g.substrate, g.feed_width, o.impedance);

    s["resonance_frequency"] = {nu0, "Hz", Provenance::AnalyticBound, "half-wave strip with loading length " +
                                                                          detail::format_general(g.loading_length * 1e3) + " mm"};
    s["effective_permittivity"] = {eeff, "", Provenance::AnalyticBound, "quasi-static microstrip formula at W_R"};
    s["q_unloaded"] = {o.q_unloaded, "", Provenance::External, "not computable from geometry; supplied by the user"};
    s["z_line"] = {o.z_line, "ohm", Provenance::External, "nominal feed impedance"};
    s["z_feed_strip"] = {z_feed, "ohm", Provenance::AnalyticBound, "microstrip formula at W_L"};

    const auto line_eff = fields::loop_efficiency(g.loop, o.z_line);
    s["efficiency_line"] = {line_eff.value, "A/m/sqrt(W)", line_eff.provenance,
                            "loop on a matched line, (1/D) sqrt(2/Z_L) x loop derating"};
    s["pi_power_line"] = {nvphys::power_for_pi(o.pi_pulse, line_eff, o.nv), "W", line_eff.provenance,
                          "pi-pulse power for the bare line with the same loop"};
    s["pi_pulse_duration"] = {o.pi_pulse, "s", Provenance::External, "requested pi-pulse duration"};

    const double stack = g.substrate.stack_thickness();
    const double alpha_hole = optics::cone_angle_from_hole(g.optical_hole, stack);
    const double alpha_na = optics::cone_angle_from_na(o.objective);
    const double alpha = std::min(alpha_hole, alpha_na);
    s["cone_angle"] = {alpha, "rad", Provenance::AnalyticBound, "min(hole edge-ray angle, objective asin(NA/n))"};
    s["collection_efficiency"] = {optics::collection_efficiency(alpha), "", Provenance::AnalyticBound,
                                  "(1 - cos alpha)/2, interface reflections neglected"};
    s["collection_efficiency_full_na"] = {optics::collection_efficiency(alpha_na), "", Provenance::AnalyticBound,
                                          "objective without the resonator diaphragm"};
    s["hole_for_full_na"] = {optics::hole_for_angle(alpha_na, stack), "m", Provenance::AnalyticBound,
                             "hole diameter passing the full objective cone"};

    rep.routes["strip"] = impl::evaluate_route(nu0, z_strip, Provenance::AnalyticBound,
                                               "microstrip formula at W_R (loop and gap neglected)", g, o);
    if (o.z_resonator_external)
        rep.routes["external"] = impl::evaluate_route(nu0, *o.z_resonator_external, Provenance::External,
                                                      "supplied resonator impedance (EM or measurement)", g, o);
    return rep;
}

inline DesignReport evaluate_design(const ResonatorGeometry& g, double q_unloaded = 74.0) {
    DesignOptions o;
    o.q_unloaded = q_unloaded;
    return evaluate_design(g, o);
}

struct WidthRow {
    double resonator_width;
    double unloaded_q;
    double z_strip;
    double coupling;             // Q0 Z / Z_L
    double relative_bandwidth;   // (1 + 2β)/Q0, transmission
    double efficiency_ratio;     // Z_L / Z, high-β gain over the bare line
    double efficiency;           // ratio × bare-line efficiency
    std::optional<double> length_for_target;  // empty when the loading length alone overshoots
};

/// One row per width. `q_values` holds a single Q₀ for every row or one per width.
inline std::vector<WidthRow> sweep_width(const ResonatorGeometry& tmpl, const std::vector<double>& widths,
                                         const std::vector<double>& q_values, double target_frequency = 2.95e9,
                                         const DesignOptions& o = {}) {
    if (widths.empty() || q_values.empty()) throw DomainError("sweep needs at least one width and one Q0");
    if (q_values.size() != 1 && q_values.size() != widths.size())
        throw DomainError("q_values must hold one value or one per width");
    const double line = fields::loop_efficiency(tmpl.loop, o.z_line).value;
    std::vector<WidthRow> rows;
    for (std::size_t i = 0; i < widths.size(); ++i) {
        const double w = widths[i];
        const double q = q_values.size() == 1 ? q_values[0] : q_values[i];
        const double z = txline::characteristic_impedance(tmpl.substrate, w, o.impedance);
        const double beta = resnet::coupling_from_impedances(q, z, o.z_line);
        WidthRow row{w, q, z, beta, (1.0 + 2.0 * beta) / q, o.z_line / z, line * o.z_line / z, std::nullopt};
        try {
            row.length_for_target = txline::length_for_frequency(target_frequency, w, tmpl.substrate, tmpl.loading_length);
        } catch (const InfeasibleDesign&) {
        }
        rows.push_back(row);
    }
    return rows;
}

/// (lowest, highest) resonance over lengths [l_min, l_max].
inline std::pair<double, double> tuning_range(const ResonatorGeometry& g, double l_min, double l_max) {
    detail::require_positive(l_min, "minimum length");
    if (l_max < l_min) throw DomainError("l_max must not be below l_min");
    txline::MicrostripSection s = g.resonator_section();
    s.length = l_max;
    const double lo = txline::half_wave_frequency(s, g.loading_length);
    s.length = l_min;
    const double hi = txline::half_wave_frequency(s, g.loading_length);
    return {lo, hi};
}

/// Resonance ratio ν(a)/ν(b) = √(εeff,b / εeff,a) at the resonator width.
inline double substrate_scaling(const ResonatorGeometry& g, const txline::SubstrateSpec& a,
                                const txline::SubstrateSpec& b) {
    return std::sqrt(txline::effective_permittivity(b, g.resonator_width) /
                     txline::effective_permittivity(a, g.resonator_width));
}

}  // namespace omegares::designer
