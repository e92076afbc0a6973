// Walks from substrate and strip geometry to the pi-pulse power of a strip resonator.

#include <cstdio>

#include <omegares.hpp>

using namespace omegares;

int main() {
    const auto g = designer::ResonatorGeometry::reference_design();

    const double eps = txline::effective_permittivity(g.substrate, g.resonator_width);
    const double z_res = txline::characteristic_impedance(g.substrate, g.resonator_width);
    const double z_feed = txline::characteristic_impedance(g.substrate, g.feed_width);
    const double nu0 = txline::half_wave_frequency(g.resonator_section(), g.loading_length);
    std::printf("strip: eps_eff %.3f, Z %.2f ohm, feed Z %.2f ohm, nu0 %.3f GHz\n", eps, z_res, z_feed, nu0 / 1e9);

    const resnet::ResonatorParams p{nu0, 74.0, resnet::coupling_from_impedances(74.0, z_res, z_feed),
                                    resnet::Mode::Reflection};
    std::printf("beta %.2f, bandwidth %.0f MHz, ringing %.3f ns\n", p.coupling, resnet::bandwidth(p) / 1e6,
                resnet::ringing_time(resnet::bandwidth(p)) * 1e9);

    const auto eff = fields::resonant_efficiency(p, z_res, g.loop);
    const double p_pi = nvphys::power_for_pi(50e-9, eff);
    std::printf("efficiency %.0f A/m/sqrt(W) (%s), 50 ns pi-pulse needs %.3f W\n", eff.value,
                std::string(fields::to_string(eff.provenance)).c_str(), p_pi);

    const auto line = fields::loop_efficiency(g.loop, 50.0);
    std::printf("same loop on a bare 50 ohm line: %.0f A/m/sqrt(W), %.2f W\n", line.value,
                nvphys::power_for_pi(50e-9, line));
}
