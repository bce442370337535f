#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library routine it is used to check.

#include <array>
#include <cmath>
#include <complex>

#include "bures/fidelity.hpp"
#include "bures/matrix.hpp"
#include "bures/rng.hpp"

namespace ref {

using bures::cplx;
using bures::Matrix2;
using bures::Matrix4;

inline Matrix2 pauli(int i) {
    Matrix2 m;
    switch (i) {
    case 0:
        m(0, 0) = m(1, 1) = 1.0;
        break;
    case 1:
        m(0, 1) = m(1, 0) = 1.0;
        break;
    case 2:
        m(0, 1) = cplx(0.0, -1.0);
        m(1, 0) = cplx(0.0, 1.0);
        break;
    default:
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
    }
    return m;
}

// Explicit Kronecker product written out entry by entry.
inline Matrix4 kron2(const Matrix2 &a, const Matrix2 &b) {
    Matrix4 out;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

// (I + sum_i c_i sigma_i x sigma_i) / 4 from explicit Pauli matrices.
inline Matrix4 bd_matrix(double c1, double c2, double c3) {
    Matrix4 m = kron2(pauli(0), pauli(0));
    const double c[3] = {c1, c2, c3};
    for (int i = 1; i <= 3; ++i) {
        m = m + kron2(pauli(i), pauli(i)) * cplx(c[i - 1]);
    }
    return m * cplx(0.25);
}

inline Matrix2 qubit(const std::array<double, 3> &v) {
    return (pauli(0) + pauli(1) * cplx(v[0]) + pauli(2) * cplx(v[1]) + pauli(3) * cplx(v[2])) * cplx(0.5);
}

inline double det2(const Matrix2 &m) {
    return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
}

// Qubit fidelity Tr(rho sigma) + 2 sqrt(det rho det sigma).
inline double qubit_fidelity(const Matrix2 &a, const Matrix2 &b) {
    return (a * b).trace().real() + 2.0 * std::sqrt(std::max(0.0, det2(a) * det2(b)));
}

// Random full-rank density matrix G G^dagger / Tr from a complex Ginibre G.
template <std::size_t N>
bures::CMatrix<N> ginibre_state(bures::Rng &rng) {
    bures::CMatrix<N> g;
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            g(i, j) = cplx(rng.normal(), rng.normal());
    bures::CMatrix<N> m = g * g.adjoint();
    return m * cplx(1.0 / m.trace().real());
}

// Random unitary: eigenvectors of a random Hermitian matrix.
inline Matrix4 random_unitary(bures::Rng &rng) {
    Matrix4 h;
    for (std::size_t i = 0; i < 4; ++i) {
        h(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < 4; ++j) {
            h(i, j) = cplx(rng.normal(), rng.normal());
            h(j, i) = std::conj(h(i, j));
        }
    }
    return bures::hermitian_eig(h).eigenvectors;
}

// Upsilon in closed form, 2 Gamma(s)/(s-1) [1 - (1+nu^2)^(-(s-1)/2) cos((s-1) atan nu)], s != 1.
inline double upsilon_closed(double nu, double s) {
    const double m = s - 1.0;
    return 2.0 * std::tgamma(s) / m * (1.0 - std::pow(1.0 + nu * nu, -0.5 * m) * std::cos(m * std::atan(nu)));
}

// Square root of the fidelity between a BD state with reordered eigenvalues
// mu and the product state with Bloch vectors a e_l and sign * a e_l, where
// sign = +1 pairs (mu1, mu2) and sign = -1 pairs (mu3, mu4).
inline double ansatz_root_fidelity(const std::array<double, 4> &mu, double a, int sign) {
    const double r1 = std::sqrt(mu[0]), r2 = std::sqrt(mu[1]), r3 = std::sqrt(mu[2]), r4 = std::sqrt(mu[3]);
    const double p = sign > 0 ? r1 + r2 : r3 + r4, m = sign > 0 ? r1 - r2 : r3 - r4;
    const double other = sign > 0 ? r3 + r4 : r1 + r2;
    return 0.5 * (std::sqrt(p * p + m * m * a * a) + other * std::sqrt(std::max(0.0, 1.0 - a * a)));
}

// Maximum of ansatz_root_fidelity^2 over a in [0, 1]: grid then golden section.
inline double ansatz_max_fidelity(const std::array<double, 4> &mu, int sign, double *argmax = nullptr) {
    const auto f = [&](double a) { return ansatz_root_fidelity(mu, a, sign); };
    const int n = 2000;
    int best = 0;
    for (int i = 1; i <= n; ++i) {
        if (f(static_cast<double>(i) / n) > f(static_cast<double>(best) / n)) {
            best = i;
        }
    }
    double lo = std::max(0.0, (best - 1.0) / n), hi = std::min(1.0, (best + 1.0) / n);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
        if (f(x1) < f(x2)) {
            lo = x1;
        } else {
            hi = x2;
        }
    }
    const double a = 0.5 * (lo + hi);
    double v = std::max(f(a), f(0.0));
    if (argmax != nullptr) {
        *argmax = f(a) >= f(0.0) ? a : 0.0;
    }
    return v * v;
}

}  // namespace ref
