#include <gtest/gtest.h>

#include <omegares/designer.hpp>
#include <omegares/report.hpp>

#include "oracles.hpp"

using namespace omegares;
using namespace omegares::designer;

namespace {

DesignReport reference() { return evaluate_design(ResonatorGeometry::reference_design(), DesignOptions{}); }

}  // namespace

TEST(Design, ReferenceResonanceNearTarget) {
    const auto rep = reference();
    EXPECT_NEAR(rep.at("resonance_frequency").value, 2.93e9, 0.02e9);
    EXPECT_EQ(rep.at("q_unloaded").provenance, Provenance::External);
}

TEST(Design, StripRouteCouplingAndBandwidth) {
    const auto rep = reference();
    EXPECT_NEAR(rep.at("strip", "coupling_by_impedance").value, 12.5, 0.2);
    EXPECT_NEAR(rep.at("strip", "bandwidth_transmission").value, 1.03e9, 0.02e9);
}

TEST(Design, ExternalRouteEfficiencies) {
    const auto rep = reference();
    EXPECT_NEAR(rep.at("external", "efficiency_transmission_exact").value / 1170.0, 1.0, 0.05);
    EXPECT_NEAR(rep.at("external", "efficiency_reflection_exact").value / 2230.0, 1.0, 0.05);
    EXPECT_NEAR(rep.at("external", "coupling_by_impedance").value, 74.0 * 10.4 / 50.0, 1e-12);
}

TEST(Design, PiPowerFollowsEfficiency) {
    const auto rep = reference();
    for (const auto& route : {"strip", "external"}) {
        const double et = rep.at(route, "efficiency_transmission_exact").value;
        const double er = rep.at(route, "efficiency_reflection_exact").value;
        EXPECT_NEAR(rep.at(route, "pi_power_transmission").value / oracle::power_for_pi(50e-9, et), 1.0, 1e-9);
        EXPECT_NEAR(rep.at(route, "pi_power_reflection").value / oracle::power_for_pi(50e-9, er), 1.0, 1e-9);
        // P ∝ efficiency⁻²
        EXPECT_NEAR(rep.at(route, "pi_power_transmission").value / rep.at(route, "pi_power_reflection").value,
                    (er / et) * (er / et), 1e-9);
    }
    const double line = rep.at("efficiency_line").value;
    EXPECT_NEAR(rep.at("pi_power_line").value / oracle::power_for_pi(50e-9, line), 1.0, 1e-9);
}

TEST(Design, BandwidthRatio) {
    const auto rep = reference();
    for (const auto& [name, f] : rep.routes) {
        const double beta = f.at("coupling_by_impedance").value;
        EXPECT_NEAR(f.at("bandwidth_reflection").value / f.at("bandwidth_transmission").value,
                    (1.0 + beta) / (1.0 + 2.0 * beta), 1e-12)
            << name;
        EXPECT_NEAR(f.at("bandwidth_transmission").value,
                    oracle::bandwidth_transmission(74.0, beta, rep.at("resonance_frequency").value), 1e-3);
    }
}

TEST(Design, EveryNumberCarriesANote) {
    const auto rep = reference();
    for (const auto& [k, q] : rep.summary) EXPECT_FALSE(q.note.empty()) << k;
    for (const auto& [name, f] : rep.routes)
        for (const auto& [k, q] : f) EXPECT_FALSE(q.note.empty()) << name << "/" << k;
}

TEST(Design, NoExternalImpedanceDropsRoute) {
    DesignOptions o;
    o.z_resonator_external.reset();
    const auto rep = evaluate_design(ResonatorGeometry::reference_design(), o);
    EXPECT_EQ(rep.routes.count("external"), 0u);
    EXPECT_EQ(rep.routes.count("strip"), 1u);
    EXPECT_THROW(rep.at("external", "z_resonator"), DomainError);
    EXPECT_THROW(rep.at("no_such_field"), DomainError);
}

TEST(Design, IdealLoopIsMoreEfficient) {
    auto g = ResonatorGeometry::reference_design();
    const auto derated = evaluate_design(g, DesignOptions{});
    g.loop.derating = 1.0;
    const auto ideal = evaluate_design(g, DesignOptions{});
    EXPECT_GT(ideal.at("efficiency_line").value, derated.at("efficiency_line").value);
    EXPECT_GT(ideal.at("external", "efficiency_transmission_exact").value,
              derated.at("external", "efficiency_transmission_exact").value);
    EXPECT_EQ(ideal.at("external", "efficiency_transmission_exact").provenance, Provenance::AnalyticBound);
    EXPECT_EQ(derated.at("external", "efficiency_transmission_exact").provenance, Provenance::Derated);
}

TEST(Design, InvalidGeometryRejected) {
    auto g = ResonatorGeometry::reference_design();
    g.optical_hole = 1e-3;
    EXPECT_THROW(evaluate_design(g, DesignOptions{}), DomainError);
}

TEST(Sweep, OneMillimetreStrip) {
    const auto rows = sweep_width(ResonatorGeometry::reference_design(), {1e-3}, {74.0});
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_NEAR(rows[0].z_strip / 21.6, 1.0, 0.05);
    EXPECT_NEAR(rows[0].coupling, 74.0 * rows[0].z_strip / 50.0, 1e-12);
    EXPECT_NEAR(rows[0].relative_bandwidth, (1.0 + 2.0 * rows[0].coupling) / 74.0, 1e-12);
}

TEST(Sweep, ExternalImpedanceGainOverLine) {
    EXPECT_NEAR(50.0 / 10.4, 4.8, 0.01);
    const auto rows = sweep_width(ResonatorGeometry::reference_design(), {0.5e-3, 1e-3, 2e-3, 3e-3, 5e-3}, {74.0});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        EXPECT_GT(rows[i].efficiency_ratio, rows[i - 1].efficiency_ratio);
        EXPECT_LT(rows[i].z_strip, rows[i - 1].z_strip);
    }
    for (const auto& r : rows) EXPECT_NEAR(r.efficiency_ratio, 50.0 / r.z_strip, 1e-12);
}

TEST(Sweep, PerWidthQ) {
    const auto rows = sweep_width(ResonatorGeometry::reference_design(), {1e-3, 2e-3}, {50.0, 100.0});
    EXPECT_EQ(rows[0].unloaded_q, 50.0);
    EXPECT_EQ(rows[1].unloaded_q, 100.0);
    EXPECT_THROW(sweep_width(ResonatorGeometry::reference_design(), {1e-3, 2e-3}, {50.0, 60.0, 70.0}), DomainError);
    EXPECT_THROW(sweep_width(ResonatorGeometry::reference_design(), {}, {50.0}), DomainError);
}

TEST(Sweep, LengthForTargetReproducesTarget) {
    const auto g = ResonatorGeometry::reference_design();
    const auto rows = sweep_width(g, {1e-3, 3e-3}, {74.0}, 2.95e9);
    for (const auto& r : rows) {
        ASSERT_TRUE(r.length_for_target.has_value());
        txline::MicrostripSection s{r.resonator_width, *r.length_for_target, g.substrate};
        EXPECT_NEAR(txline::half_wave_frequency(s, g.loading_length) / 2.95e9, 1.0, 1e-9);
    }
    // a target above what the loading length allows has no solution
    const auto high = sweep_width(g, {3e-3}, {74.0}, 50e9);
    EXPECT_FALSE(high[0].length_for_target.has_value());
}

TEST(Tuning, FiveToFiftySixMillimetres) {
    const auto g = ResonatorGeometry::reference_design();
    const auto [lo, hi] = tuning_range(g, 5e-3, 56e-3);
    EXPECT_NEAR(lo / 1e9, 1.29, 0.01);
    EXPECT_NEAR(hi / 1e9, 4.84, 0.01);
    txline::MicrostripSection s = g.resonator_section();
    s.length = 56e-3;
    EXPECT_EQ(lo, txline::half_wave_frequency(s, g.loading_length));
    s.length = 5e-3;
    EXPECT_EQ(hi, txline::half_wave_frequency(s, g.loading_length));
    EXPECT_THROW(tuning_range(g, 10e-3, 5e-3), DomainError);
}

TEST(Substrate, Scaling) {
    const auto g = ResonatorGeometry::reference_design();
    const auto ro = txline::SubstrateSpec::ro3003();
    EXPECT_DOUBLE_EQ(substrate_scaling(g, ro, ro), 1.0);
    auto hi = ro;
    hi.rel_permittivity = 10.0;
    // moving from εr 10 to RO3003 raises the resonance
    EXPECT_NEAR(substrate_scaling(g, ro, hi), 1.80, 0.01);
    auto lo = ro;
    lo.rel_permittivity = 2.2;
    const double expected = std::sqrt(oracle::eps_eff(2.2, ro.dielectric_thickness, 3e-3) /
                                      oracle::eps_eff(3.0, ro.dielectric_thickness, 3e-3));
    EXPECT_NEAR(substrate_scaling(g, ro, lo), expected, 1e-12);
    EXPECT_NEAR(expected, 0.8616, 5e-4);
}

TEST(Report, JsonHasSortedKeysAndProvenance) {
    const auto j = report::to_json(reference());
    ASSERT_TRUE(j.contains("summary"));
    ASSERT_TRUE(j.contains("routes"));
    EXPECT_EQ(j["summary"]["q_unloaded"]["provenance"], "external");
    const std::string s = report::dump(j);
    EXPECT_EQ(s.back(), '\n');
    EXPECT_LT(s.find("\"routes\""), s.find("\"summary\""));
}

TEST(Report, TableMentionsEveryCase) {
    const auto t = report::to_table(reference());
    EXPECT_NE(t.find("transmission line"), std::string::npos);
    EXPECT_NE(t.find("transmission resonator [strip]"), std::string::npos);
    EXPECT_NE(t.find("reflection resonator [external]"), std::string::npos);
}
