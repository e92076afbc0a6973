// Synthesizes a noisy two-port trace and recovers the resonator parameters.

#include <cstdio>
#include <random>

#include <omegares.hpp>

using namespace omegares;

int main() {
    const resnet::ResonatorParams truth{2.93e9, 74.0, 11.5, resnet::Mode::Transmission};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1e-3);

    std::vector<double> f;
    std::vector<sparams::SPoint> d;
    for (int i = 0; i <= 800; ++i) {
        const double nu = 1e9 + 5e6 * i;
        const auto s = resnet::response(truth, nu);
        sparams::SPoint pt;
        pt.s11 = s.gamma + sparams::complex(noise(rng), noise(rng));
        pt.s21 = *s.t + sparams::complex(noise(rng), noise(rng));
        pt.s12 = pt.s21;
        pt.s22 = pt.s11;
        f.push_back(nu);
        d.push_back(pt);
    }
    const sparams::SParamTrace trace(f, d, 2);

    const auto r = fitlab::fit_transmission(trace);
    std::printf("nu0 %.4f GHz  Q0 %.2f  beta %.3f  (%d iterations, rms %.2e dB)\n", r.params.resonance_frequency / 1e9,
                r.params.unloaded_q, r.params.coupling, r.iterations, r.residual_rms);
    std::fputs(report::dump(report::to_json(r)).c_str(), stdout);
}
