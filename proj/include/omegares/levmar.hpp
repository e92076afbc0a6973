#pragma once

// Damped least squares (Levenberg-Marquardt) for small dense problems with a
// central-difference Jacobian.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "omegares/errors.hpp"

namespace omegares::optim {

struct LMOptions {
    int max_iterations = 200;
    /// Stop once ||step|| <= tolerance · (||x|| + tolerance).
    double tolerance = 1e-10;
    double initial_damping = 1e-3;
    /// Relative central-difference step; absolute for |x| < 1.
    double jacobian_step = 1e-6;
};

struct LMResult {
    std::vector<double> x;
    double cost = 0.0;  // sum of squared residuals
    std::size_t residual_count = 0;
    int iterations = 0;
    bool converged = false;
    std::vector<double> cost_history;   // cost after each accepted step, starting with the initial cost
    std::vector<double> covariance;     // row-major n×n, (JᵀJ)⁻¹ · cost/(m−n); empty if singular
};

/// Dense row-major matrix helpers; n is tiny.
namespace dense {

/// In-place Cholesky of an SPD matrix. Returns false if not positive definite.
inline bool cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        double d = a[j * n + j];
        for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
        if (!(d > 0.0) || !std::isfinite(d)) return false;
        d = std::sqrt(d);
        a[j * n + j] = d;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
            a[i * n + j] = s / d;
        }
    }
    return true;
}

inline std::vector<double> cholesky_solve(const std::vector<double>& l, std::size_t n, std::vector<double> b) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < i; ++k) b[i] -= l[i * n + k] * b[k];
        b[i] /= l[i * n + i];
    }
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= l[k * n + i] * b[k];
        b[i] /= l[i * n + i];
    }
    return b;
}

}  // namespace dense

/// Minimizes Σ rᵢ(x)² where `residuals(x, r)` fills r (its size must not change between calls).
/// Throws DegenerateFit when a parameter has no influence on any residual.
template <class ResidualFn>
LMResult levenberg_marquardt(ResidualFn&& residuals, std::vector<double> x, const LMOptions& opts = {}) {
    const std::size_t n = x.size();
    std::vector<double> r;
    residuals(x, r);
    const std::size_t m = r.size();
    if (m < n) throw DegenerateFit("fewer residuals than parameters");

    auto sumsq = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double e : v) s += e * e;
        return std::isfinite(s) ? s : std::numeric_limits<double>::infinity();
    };

    std::vector<double> jac(m * n), rp, rm;
    auto jacobian = [&](const std::vector<double>& at) {
        std::vector<double> xp = at;
        for (std::size_t j = 0; j < n; ++j) {
            const double h = opts.jacobian_step * std::max(std::abs(at[j]), 1.0);
            xp[j] = at[j] + h;
            residuals(xp, rp);
            xp[j] = at[j] - h;
            residuals(xp, rm);
            xp[j] = at[j];
            for (std::size_t i = 0; i < m; ++i) jac[i * n + j] = (rp[i] - rm[i]) / (2.0 * h);
        }
    };
    auto normal_equations = [&](std::vector<double>& jtj, std::vector<double>& jtr) {
        jtj.assign(n * n, 0.0);
        jtr.assign(n, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            const double* row = &jac[i * n];
            for (std::size_t a = 0; a < n; ++a) {
                jtr[a] += row[a] * r[i];
                for (std::size_t b = 0; b <= a; ++b) jtj[a * n + b] += row[a] * row[b];
            }
        }
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) jtj[a * n + b] = jtj[b * n + a];
    };

    LMResult out;
    out.residual_count = m;
    double cost = sumsq(r);
    if (!std::isfinite(cost)) throw DegenerateFit("non-finite residuals at the starting point");
    out.cost_history.push_back(cost);
    double lambda = opts.initial_damping;
    std::vector<double> jtj, jtr, trial, r_trial;

    int it = 0;
    for (; it < opts.max_iterations && !out.converged; ++it) {
        if (cost == 0.0) {
            out.converged = true;
            break;
        }
        jacobian(x);
        normal_equations(jtj, jtr);
        for (std::size_t a = 0; a < n; ++a)
            if (!(jtj[a * n + a] > 0.0)) throw DegenerateFit("singular Jacobian: parameter " + std::to_string(a) + " has no effect");

        bool accepted = false;
        while (!accepted) {
            std::vector<double> damped = jtj;
            for (std::size_t a = 0; a < n; ++a) damped[a * n + a] *= 1.0 + lambda;
            std::vector<double> step;
            if (dense::cholesky(damped, n)) {
                std::vector<double> rhs(n);
                for (std::size_t a = 0; a < n; ++a) rhs[a] = -jtr[a];
                step = dense::cholesky_solve(damped, n, rhs);
                trial = x;
                for (std::size_t a = 0; a < n; ++a) trial[a] += step[a];
                residuals(trial, r_trial);
                const double c = sumsq(r_trial);
                if (c < cost) {
                    double snorm = 0.0, xnorm = 0.0;
                    for (std::size_t a = 0; a < n; ++a) {
                        snorm += step[a] * step[a];
                        xnorm += trial[a] * trial[a];
                    }
                    x.swap(trial);
                    r.swap(r_trial);
                    cost = c;
                    out.cost_history.push_back(cost);
                    lambda = std::max(lambda / 10.0, 1e-15);
                    accepted = true;
                    if (std::sqrt(snorm) <= opts.tolerance * (std::sqrt(xnorm) + opts.tolerance)) out.converged = true;
                    continue;
                }
            }
            lambda *= 10.0;
            if (lambda > 1e20) {
                // no descent direction left at working precision: a stationary point
                out.converged = true;
                break;
            }
        }
    }
    out.iterations = it;
    out.x = x;
    out.cost = cost;

    jacobian(x);
    normal_equations(jtj, jtr);
    std::vector<double> l = jtj;
    if (dense::cholesky(l, n)) {
        const double sigma2 = m > n ? cost / static_cast<double>(m - n) : 0.0;
        out.covariance.assign(n * n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<double> e(n, 0.0);
            e[j] = 1.0;
            const auto col = dense::cholesky_solve(l, n, e);
            for (std::size_t i = 0; i < n; ++i) out.covariance[i * n + j] = col[i] * sigma2;
        }
    }
    return out;
}

}  // namespace omegares::optim
