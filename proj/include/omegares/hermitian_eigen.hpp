#pragma once

// Cyclic Jacobi diagonalization of small dense Hermitian matrices.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>

namespace omegares::linalg {

template <std::size_t N>
using CMatrix = std::array<std::array<std::complex<double>, N>, N>;

template <std::size_t N>
struct HermitianEigen {
    std::array<double, N> values;  // ascending
    CMatrix<N> vectors;            // vectors[i][k]: component i of eigenvector k
    int sweeps = 0;
};

class EigenNotConverged : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Diagonalizes `a` (only its Hermitian part is used). Sweeps stop once the off-diagonal
/// Frobenius norm drops below `threshold` times the full norm.
template <std::size_t N>
HermitianEigen<N> jacobi_hermitian(CMatrix<N> a, double threshold = 1e-14, int max_sweeps = 64) {
    using cd = std::complex<double>;
    CMatrix<N> v{};
    for (std::size_t i = 0; i < N; ++i) v[i][i] = 1.0;

    for (std::size_t i = 0; i < N; ++i) {
        a[i][i] = a[i][i].real();
        for (std::size_t j = i + 1; j < N; ++j) {
            const cd m = 0.5 * (a[i][j] + std::conj(a[j][i]));
            a[i][j] = m;
            a[j][i] = std::conj(m);
        }
    }

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j)
                if (i != j) s += std::norm(a[i][j]);
        return std::sqrt(s);
    };
    double full = 0.0;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j) full += std::norm(a[i][j]);
    full = std::sqrt(full);

    int sweep = 0;
    for (; sweep <= max_sweeps; ++sweep) {
        if (off_norm() <= threshold * full) break;
        if (sweep == max_sweeps) throw EigenNotConverged("Jacobi sweeps did not converge");
        for (std::size_t p = 0; p + 1 < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const double r = std::abs(a[p][q]);
                if (r == 0.0) continue;
                const cd phase = a[p][q] / r;  // e^{iφ}
                const double app = a[p][p].real(), aqq = a[q][q].real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U = I except U_pp = c, U_pq = s, U_qp = -s e^{-iφ}, U_qq = c e^{-iφ}; A <- U^H A U.
                const cd upq = s, uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
                for (std::size_t k = 0; k < N; ++k) {
                    const cd akp = a[k][p], akq = a[k][q];
                    a[k][p] = akp * c + akq * uqp;
                    a[k][q] = akp * upq + akq * uqq;
                    const cd vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = vkp * c + vkq * uqp;
                    v[k][q] = vkp * upq + vkq * uqq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cd apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk + std::conj(uqp) * aqk;
                    a[q][k] = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                a[p][p] = a[p][p].real();
                a[q][q] = a[q][q].real();
            }
        }
    }

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a[x][x].real() < a[y][y].real(); });
    HermitianEigen<N> out;
    out.sweeps = sweep;
    for (std::size_t k = 0; k < N; ++k) {
        out.values[k] = a[order[k]][order[k]].real();
        for (std::size_t i = 0; i < N; ++i) out.vectors[i][k] = v[i][order[k]];
    }
    return out;
}

}  // namespace omegares::linalg
