#pragma once

// Extraction of (ν₀, Q₀, β) from S-parameter magnitudes by damped least squares against the
// two-port (S11 + S21) or one-port (S11) resonator lineshapes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "omegares/errors.hpp"
#include "omegares/levmar.hpp"
#include "omegares/resnet.hpp"
#include "omegares/sparams.hpp"

namespace omegares::fitlab {

using resnet::Mode;
using resnet::ResonatorParams;
using sparams::SParamTrace;

enum class ObjectiveSpace { LinearMagnitude, Decibel };

/// Magnitude-only reflection data cannot tell (Q₀, β) from (Q₀/β, 1/β); the caller picks the branch.
enum class CouplingBranch { Overcoupled, Undercoupled };

struct FitConfig {
    /// Frequency window (Hz). Unset: ν₀ ± window_fraction·ν₀ about the initial estimate.
    std::optional<std::pair<double, double>> window;
    double window_fraction = 0.35;
    int max_iterations = 200;
    double tolerance = 1e-10;
    ObjectiveSpace objective_space = ObjectiveSpace::Decibel;
    /// Fit an overall gain offset (dB) shared by all channels.
    bool amplitude_baseline = false;
    CouplingBranch branch = CouplingBranch::Overcoupled;
    /// Decibel objective only: model and data levels are clamped from below at this value.
    double db_floor = -100.0;

    void validate() const {
        if (window && !(window->second > window->first)) throw DomainError("fit window is empty");
        detail::require_positive(window_fraction, "window fraction");
        detail::require_positive(tolerance, "tolerance");
        if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
    }
};

/// One-sigma estimates from the Gauss-Newton covariance at the optimum (approximate).
struct ParamUncertainties {
    double resonance_frequency = 0.0;
    double unloaded_q = 0.0;
    double coupling = 0.0;
    std::optional<double> baseline_db;
};

struct FitResult {
    ResonatorParams params;
    std::optional<double> baseline_db;
    double residual_rms = 0.0;  // objective units (dB or linear magnitude)
    int iterations = 0;
    bool converged = false;
    ParamUncertainties parameter_uncertainties;
    std::size_t points_used = 0;
    std::pair<double, double> window{0.0, 0.0};
    ObjectiveSpace objective_space = ObjectiveSpace::Decibel;
    std::optional<CouplingBranch> branch;  // Reflection fits only
    std::vector<double> cost_history;
};

namespace impl {

inline double interpolate_crossing(double f0, double y0, double f1, double y1, double level) {
    if (y1 == y0) return 0.5 * (f0 + f1);
    return f0 + (level - y0) * (f1 - f0) / (y1 - y0);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double coupling_from_level(double g, Mode mode, CouplingBranch branch) {
    if (mode == Mode::Transmission) return 0.5 * (1.0 / g - 1.0);
    return branch == CouplingBranch::Overcoupled ? (1.0 + g) / (1.0 - g) : (1.0 - g) / (1.0 + g);
}

}  // namespace impl

/// Closed-form starting point: ν₀ at the |S11| minimum, β from the on-resonance |S11|, Q₀ from
/// the half-power width of |T|² (Transmission) or 1 − |Γ|² (Reflection).
inline ResonatorParams initial_guess(const SParamTrace& trace, Mode mode,
                                     CouplingBranch branch = CouplingBranch::Overcoupled) {
    const std::size_t n = trace.size();
    if (n < 5) throw NoResonance("need at least 5 points to locate a resonance");
    if (mode == Mode::Transmission && trace.ports() != 2)
        throw DomainError("transmission fits need a two-port trace");
    const auto& f = trace.frequencies();
    const auto& d = trace.data();

    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = std::abs(d[i].s11);
    const std::size_t k = static_cast<std::size_t>(std::min_element(g.begin(), g.end()) - g.begin());
    if (k == 0 || k + 1 == n) throw NoResonance("no |S11| minimum inside the trace");
    if (!(g[k] < 1.0)) throw NoResonance("|S11| never drops below 1");

    // parabolic refinement of the dip position in dB
    double nu0 = f[k];
    {
        const double floor = 1e-12;
        const double ya = std::log10(std::max(g[k - 1], floor)), yb = std::log10(std::max(g[k], floor)),
                     yc = std::log10(std::max(g[k + 1], floor));
        const double fa = f[k - 1], fb = f[k], fc = f[k + 1];
        const double den = (fb - fa) * (yb - yc) - (fb - fc) * (yb - ya);
        if (den != 0.0) {
            const double num = (fb - fa) * (fb - fa) * (yb - yc) - (fb - fc) * (fb - fc) * (yb - ya);
            const double cand = fb - 0.5 * num / den;
            if (cand > fa && cand < fc) nu0 = cand;
        }
    }

    const double level = std::max(g[k], 1e-6);
    double beta = impl::coupling_from_level(level, mode, branch);
    if (!(beta > 0.0) || !std::isfinite(beta)) beta = 1.0;
    const double loading = mode == Mode::Transmission ? 1.0 + 2.0 * beta : 1.0 + beta;

    // power delivered past / into the resonator
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i)
        y[i] = mode == Mode::Transmission ? std::norm(d[i].s21) : 1.0 - std::norm(d[i].s11);
    const double half = 0.5 * y[k];

    std::vector<double> qs;
    for (std::size_t i = k; i-- > 0;) {
        if (y[i] < half) {
            const double fl = impl::interpolate_crossing(f[i], y[i], f[i + 1], y[i + 1], half);
            if (fl > 0.0 && fl < nu0) qs.push_back(loading / (nu0 / fl - fl / nu0));
            break;
        }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
        if (y[i] < half) {
            const double fr = impl::interpolate_crossing(f[i - 1], y[i - 1], f[i], y[i], half);
            if (fr > nu0) qs.push_back(loading / (fr / nu0 - nu0 / fr));
            break;
        }
    }
    double q0 = 0.0;
    if (!qs.empty()) {
        q0 = 0.0;
        for (double q : qs) q0 += q;
        q0 /= static_cast<double>(qs.size());
    } else {
        // half-power points lie outside the trace: invert |S11| pointwise for ξ
        std::vector<double> pointwise;
        const double l2 = loading * loading;
        const double num0 = mode == Mode::Transmission ? 1.0 : (1.0 - beta) * (1.0 - beta);
        for (std::size_t i = 0; i < n; ++i) {
            const double s2 = g[i] * g[i];
            const double x = nu0 / f[i] - f[i] / nu0;
            if (i == k || std::abs(x) < 1e-9 || s2 >= 1.0) continue;
            const double xi2 = (s2 * l2 - num0) / (1.0 - s2);
            if (xi2 > 0.0) pointwise.push_back(std::sqrt(xi2) / std::abs(x));
        }
        q0 = pointwise.empty() ? loading * nu0 / (f.back() - f.front()) : impl::median(pointwise);
    }
    if (!(q0 > 0.0) || !std::isfinite(q0)) throw NoResonance("could not estimate the resonance width");
    return {nu0, q0, beta, mode};
}

namespace impl {

struct Problem {
    const SParamTrace* trace;
    Mode mode;
    ObjectiveSpace space;
    bool baseline;
    double db_floor;
    std::size_t begin = 0, end = 0;  // index range inside the window
    double nu_ref = 1.0;

    ResonatorParams unpack(const std::vector<double>& x) const {
        return {x[0] * nu_ref, std::exp(x[1]), std::exp(x[2]), mode};
    }

    double clamp_db(double db) const { return std::max(db, db_floor); }

    void residuals(const ResonatorParams& p, double baseline_db, std::vector<double>& r) const {
        r.clear();
        const double gain = std::pow(10.0, baseline_db / 20.0);
        const auto& f = trace->frequencies();
        const auto& d = trace->data();
        auto push = [&](sparams::complex model, sparams::complex data) {
            if (space == ObjectiveSpace::Decibel)
                r.push_back(clamp_db(sparams::db_magnitude(model) + baseline_db) - clamp_db(sparams::db_magnitude(data)));
            else
                r.push_back(gain * std::abs(model) - std::abs(data));
        };
        for (std::size_t i = begin; i < end; ++i) {
            const auto s = resnet::response(p, f[i]);
            push(s.gamma, d[i].s11);
            if (mode == Mode::Transmission) push(*s.t, d[i].s21);
        }
    }

    void operator()(const std::vector<double>& x, std::vector<double>& r) const {
        if (!(x[0] > 0.0)) {
            // outside the physical domain: a large constant residual makes the step fail
            const std::size_t per = mode == Mode::Transmission ? 2 : 1;
            r.assign((end - begin) * per, 1e6);
            return;
        }
        residuals(unpack(x), baseline ? x[3] : 0.0, r);
    }
};

inline std::pair<std::size_t, std::size_t> window_indices(const SParamTrace& t, std::pair<double, double> w) {
    const auto& f = t.frequencies();
    const auto b = std::lower_bound(f.begin(), f.end(), w.first);
    const auto e = std::upper_bound(f.begin(), f.end(), w.second);
    return {static_cast<std::size_t>(b - f.begin()), static_cast<std::size_t>(e - f.begin())};
}

inline std::pair<double, double> resolve_window(const FitConfig& cfg, double nu0) {
    if (cfg.window) return *cfg.window;
    return {nu0 * (1.0 - cfg.window_fraction), nu0 * (1.0 + cfg.window_fraction)};
}

inline FitResult run_fit(const SParamTrace& trace, const FitConfig& cfg, Mode mode, const ResonatorParams& start,
                         double baseline_start) {
    Problem prob{&trace, mode, cfg.objective_space, cfg.amplitude_baseline, cfg.db_floor};
    const auto window = resolve_window(cfg, start.resonance_frequency);
    std::tie(prob.begin, prob.end) = window_indices(trace, window);
    const std::size_t npar = cfg.amplitude_baseline ? 4 : 3;
    if (prob.end - prob.begin < npar + 1) throw DegenerateFit("too few points inside the fit window");
    prob.nu_ref = start.resonance_frequency;

    std::vector<double> x = {1.0, std::log(start.unloaded_q), std::log(start.coupling)};
    if (cfg.amplitude_baseline) x.push_back(baseline_start);
    optim::LMOptions lm;
    lm.max_iterations = cfg.max_iterations;
    lm.tolerance = cfg.tolerance;
    const auto res = optim::levenberg_marquardt(prob, x, lm);

    FitResult out;
    out.params = prob.unpack(res.x);
    if (cfg.amplitude_baseline) out.baseline_db = res.x[3];
    out.residual_rms = std::sqrt(res.cost / static_cast<double>(res.residual_count));
    out.iterations = res.iterations;
    out.converged = res.converged && std::isfinite(out.residual_rms);
    out.points_used = prob.end - prob.begin;
    out.window = window;
    out.objective_space = cfg.objective_space;
    out.cost_history = res.cost_history;
    if (!res.covariance.empty()) {
        const auto sd = [&](std::size_t i) { return std::sqrt(std::max(res.covariance[i * npar + i], 0.0)); };
        out.parameter_uncertainties.resonance_frequency = sd(0) * prob.nu_ref;
        out.parameter_uncertainties.unloaded_q = sd(1) * out.params.unloaded_q;
        out.parameter_uncertainties.coupling = sd(2) * out.params.coupling;
        if (cfg.amplitude_baseline) out.parameter_uncertainties.baseline_db = sd(3);
    } else {
        const double inf = std::numeric_limits<double>::infinity();
        out.parameter_uncertainties = {inf, inf, inf, cfg.amplitude_baseline ? std::optional<double>(inf) : std::nullopt};
    }
    return out;
}

}  // namespace impl

/// Root-mean-square residual of `params` (plus gain offset) against the trace. The window is
/// cfg.window when set, else params.ν₀ ± window_fraction·ν₀.
inline double residual_rms(const ResonatorParams& params, double baseline_db, const SParamTrace& trace,
                           const FitConfig& cfg = {}) {
    params.validate();
    cfg.validate();
    if (params.mode == Mode::Transmission && trace.ports() != 2)
        throw DomainError("transmission residuals need a two-port trace");
    impl::Problem prob{&trace, params.mode, cfg.objective_space, true, cfg.db_floor};
    std::tie(prob.begin, prob.end) = impl::window_indices(trace, impl::resolve_window(cfg, params.resonance_frequency));
    if (prob.end == prob.begin) throw DomainError("no trace points inside the window");
    std::vector<double> r;
    prob.residuals(params, baseline_db, r);
    double s = 0.0;
    for (double e : r) s += e * e;
    return std::sqrt(s / static_cast<double>(r.size()));
}

/// Joint |S11|, |S21| fit of the two-port lineshape. A fit that hits the iteration cap is
/// returned with converged = false.
inline FitResult fit_transmission(const SParamTrace& trace, const FitConfig& cfg = {}) {
    cfg.validate();
    if (trace.ports() != 2) throw DomainError("transmission fits need a two-port trace");
    const ResonatorParams start = initial_guess(trace, Mode::Transmission);
    return impl::run_fit(trace, cfg, Mode::Transmission, start, 0.0);
}

/// |S11| fit of the one-port lineshape on the branch selected by cfg.branch.
inline FitResult fit_reflection(const SParamTrace& trace, const FitConfig& cfg = {}) {
    cfg.validate();
    const ResonatorParams start = initial_guess(trace, Mode::Reflection, cfg.branch);
    FitResult out = impl::run_fit(trace, cfg, Mode::Reflection, start, 0.0);
    const bool wrong_branch = cfg.branch == CouplingBranch::Overcoupled ? out.params.coupling < 1.0
                                                                         : out.params.coupling > 1.0;
    if (wrong_branch) {
        // |Γ(Q₀, β)| = |Γ(Q₀/β, 1/β)| exactly; refit from the mirror point for its covariance
        ResonatorParams mirror = out.params;
        mirror.unloaded_q = out.params.unloaded_q / out.params.coupling;
        mirror.coupling = 1.0 / out.params.coupling;
        FitConfig fixed = cfg;
        fixed.window = out.window;
        const int first = out.iterations;
        const bool first_ok = out.converged;
        out = impl::run_fit(trace, fixed, Mode::Reflection, mirror, out.baseline_db.value_or(0.0));
        out.iterations += first;
        out.converged = out.converged && first_ok;
    }
    out.branch = cfg.branch;
    return out;
}

}  // namespace omegares::fitlab
