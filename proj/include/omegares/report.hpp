#pragma once

// Key-value reports. Objects serialize with alphabetically ordered keys so that output diffs cleanly.

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "omegares/designer.hpp"
#include "omegares/detail/format.hpp"
#include "omegares/fitlab.hpp"

namespace omegares::report {

using json = nlohmann::json;

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const fitlab::FitResult& r) {
    json j;
    j["mode"] = std::string(resnet::to_string(r.params.mode));
    j["nu0_hz"] = r.params.resonance_frequency;
    j["q0"] = r.params.unloaded_q;
    j["beta"] = r.params.coupling;
    j["nu0_sigma_hz"] = finite_or_null(r.parameter_uncertainties.resonance_frequency);
    j["q0_sigma"] = finite_or_null(r.parameter_uncertainties.unloaded_q);
    j["beta_sigma"] = finite_or_null(r.parameter_uncertainties.coupling);
    if (r.baseline_db) {
        j["baseline_db"] = *r.baseline_db;
        j["baseline_db_sigma"] = finite_or_null(r.parameter_uncertainties.baseline_db.value_or(NAN));
    }
    j["bandwidth_hz"] = resnet::bandwidth(r.params);
    j["converged"] = r.converged;
    j["iterations"] = r.iterations;
    j["objective"] = r.objective_space == fitlab::ObjectiveSpace::Decibel ? "db" : "linear";
    j["points_used"] = r.points_used;
    j["residual_rms"] = r.residual_rms;
    j["window_hz"] = {r.window.first, r.window.second};
    if (r.branch) j["branch"] = *r.branch == fitlab::CouplingBranch::Overcoupled ? "overcoupled" : "undercoupled";
    return j;
}

inline json to_json(const designer::Quantity& q) {
    return {{"value", finite_or_null(q.value)},
            {"unit", q.unit},
            {"provenance", std::string(fields::to_string(q.provenance))},
            {"note", q.note}};
}

inline json to_json(const designer::DesignReport& rep) {
    json j;
    json& summary = j["summary"];
    summary = json::object();
    for (const auto& [k, q] : rep.summary) summary[k] = to_json(q);
    json& routes = j["routes"];
    routes = json::object();
    for (const auto& [name, fields] : rep.routes) {
        json& r = routes[name];
        r = json::object();
        for (const auto& [k, q] : fields) r[k] = to_json(q);
    }
    return j;
}

inline json to_json(const std::vector<designer::WidthRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["resonator_width_m"] = r.resonator_width;
        j["q0"] = r.unloaded_q;
        j["z_strip_ohm"] = r.z_strip;
        j["beta"] = r.coupling;
        j["relative_bandwidth"] = r.relative_bandwidth;
        j["efficiency_ratio"] = r.efficiency_ratio;
        j["efficiency"] = r.efficiency;
        j["length_for_target_m"] = r.length_for_target ? json(*r.length_for_target) : json(nullptr);
        arr.push_back(j);
    }
    return arr;
}

/// Two-space indented JSON with a trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace impl {

inline std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

}  // namespace impl

/// Plain-text summary in the layout of a resonator/line comparison table.
inline std::string to_table(const designer::DesignReport& rep) {
    using detail::format_fixed;
    std::string out;
    out += "resonance frequency: " + format_fixed(rep.at("resonance_frequency").value / 1e9, 3) + " GHz, Q0 = " +
           format_fixed(rep.at("q_unloaded").value, 1) + " (" +
           std::string(fields::to_string(rep.at("q_unloaded").provenance)) + ")\n";
    const std::string header = impl::pad("case", 34) + impl::pad("H/sqrt(P) A/m/sqrt(W)", 24) +
                               impl::pad("P_pi W", 10) + impl::pad("bandwidth MHz", 16) + impl::pad("beta", 8) + "\n";
    out += header;
    out += std::string(header.size() - 1, '-') + "\n";
    auto row = [&](const std::string& name, double eff, double p, const std::string& bw, const std::string& beta) {
        out += impl::pad(name, 34) + impl::pad(format_fixed(eff, 0), 24) + impl::pad(format_fixed(p, 3), 10) +
               impl::pad(bw, 16) + impl::pad(beta, 8) + "\n";
    };
    row("transmission line", rep.at("efficiency_line").value, rep.at("pi_power_line").value, "full", "-");
    for (const auto& [name, f] : rep.routes) {
        const std::string beta = format_fixed(f.at("coupling_by_impedance").value, 2);
        row("transmission resonator [" + name + "]", f.at("efficiency_transmission_exact").value,
            f.at("pi_power_transmission").value, format_fixed(f.at("bandwidth_transmission").value / 1e6, 0), beta);
        row("reflection resonator [" + name + "]", f.at("efficiency_reflection_exact").value,
            f.at("pi_power_reflection").value, format_fixed(f.at("bandwidth_reflection").value / 1e6, 0), beta);
    }
    out += "P_pi: input power for a " + format_fixed(rep.at("pi_pulse_duration").value * 1e9, 0) +
           " ns pi-pulse; resonator efficiencies use the exact small-loop form\n";
    out += "optics: cone angle " + format_fixed(optics::deg(rep.at("cone_angle").value), 1) +
           " deg, collection efficiency " + format_fixed(rep.at("collection_efficiency").value, 3) + "\n";
    return out;
}

}  // namespace omegares::report
