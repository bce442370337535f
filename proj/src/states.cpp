#include "bures/states.hpp"

#include <cmath>
#include <string>

#include "bures/errors.hpp"
#include "bures/fidelity.hpp"

namespace bures {

namespace {

BdEigenvalues raw_eigenvalues(double c1, double c2, double c3) {
    return {
        0.25 * (1.0 + c1 - c2 + c3),
        0.25 * (1.0 - c1 + c2 + c3),
        0.25 * (1.0 + c1 + c2 - c3),
        0.25 * (1.0 - c1 - c2 - c3),
    };
}

double norm3(const std::array<double, 3> &v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

}  // namespace

BellDiagonalState::BellDiagonalState(double c1, double c2, double c3) : c_{c1, c2, c3} {
    for (double c : c_) {
        if (!std::isfinite(c)) {
            throw InvalidState("invalid Bell-diagonal state: non-finite coefficient");
        }
    }
    for (double p : raw_eigenvalues(c1, c2, c3).as_array()) {
        if (p < -kValidTolerance) {
            throw InvalidState(
                "invalid Bell-diagonal state: (" + std::to_string(c1) + ", " + std::to_string(c2) + ", " +
                std::to_string(c3) + ") is outside the Bell tetrahedron");
        }
    }
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4 &m) {
    if (m.hermiticity_defect() > 1e-12) {
        throw InvalidState("density matrix is not Hermitian");
    }
    const cplx tr = m.trace();
    if (std::abs(tr.real() - 1.0) > 1e-12 || std::abs(tr.imag()) > 1e-12) {
        throw InvalidState("density matrix does not have unit trace");
    }
    if (hermitian_eigenvalues(m)[0] < -1e-10) {
        throw InvalidState("density matrix has a negative eigenvalue");
    }
    return DensityMatrix(m.hermitian_part());
}

ProductState::ProductState(const std::array<double, 3> &a, const std::array<double, 3> &b) : a_(a), b_(b) {
    if (!(norm3(a) <= 1.0 + 1e-12) || !(norm3(b) <= 1.0 + 1e-12)) {
        throw InvalidState("Bloch vector longer than 1");
    }
}

BellDiagonalState bd_from_c(double c1, double c2, double c3) {
    return BellDiagonalState(c1, c2, c3);
}

BdEigenvalues bd_eigenvalues(const BellDiagonalState &state) {
    BdEigenvalues ev = raw_eigenvalues(state.c1(), state.c2(), state.c3());
    ev.alpha = std::max(ev.alpha, 0.0);
    ev.beta = std::max(ev.beta, 0.0);
    ev.gamma = std::max(ev.gamma, 0.0);
    ev.delta = std::max(ev.delta, 0.0);
    return ev;
}

BellDiagonalState bd_from_eigenvalues(const BdEigenvalues &ev) {
    auto p = ev.as_array();
    double sum = 0.0;
    for (double &x : p) {
        if (!(x >= -1e-10)) {
            throw InvalidState("invalid Bell-diagonal eigenvalues: negative entry");
        }
        x = std::max(x, 0.0);
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw InvalidState("invalid Bell-diagonal eigenvalues: sum differs from 1");
    }
    for (double &x : p) {
        x /= sum;
    }
    const double alpha = p[0], beta = p[1], gamma = p[2], delta = p[3];
    return BellDiagonalState(alpha - beta + gamma - delta, -alpha + beta + gamma - delta,
                             alpha + beta - gamma - delta);
}

DensityMatrix bd_to_density(const BellDiagonalState &state) {
    const double c1 = state.c1(), c2 = state.c2(), c3 = state.c3();
    Matrix4 m;
    m(0, 0) = 0.25 * (1.0 + c3);
    m(1, 1) = 0.25 * (1.0 - c3);
    m(2, 2) = 0.25 * (1.0 - c3);
    m(3, 3) = 0.25 * (1.0 + c3);
    m(0, 3) = m(3, 0) = 0.25 * (c1 - c2);
    m(1, 2) = m(2, 1) = 0.25 * (c1 + c2);
    return DensityMatrix::unchecked(m);
}

DensityMatrix product_to_density(const ProductState &p) {
    return DensityMatrix::unchecked(kron(qubit_from_bloch(p.a()), qubit_from_bloch(p.b())));
}

std::array<double, 4> cq_reference_diagonal(const CqReference &q) {
    if (!(std::abs(q.s) <= 1.0) || !(std::abs(q.r) <= 1.0)) {
        throw InvalidState("classical-quantum reference parameters must lie in [-1, 1]");
    }
    return {
        0.25 * (1.0 + q.s),
        0.25 * (1.0 - q.s) * (1.0 + q.r),
        0.25 * (1.0 - q.s) * (1.0 - q.r),
        0.25 * (1.0 + q.s),
    };
}

DensityMatrix cq_reference_density(const CqReference &q) {
    return DensityMatrix::unchecked(Matrix4::diagonal(cq_reference_diagonal(q)));
}

BellDiagonalState random_bd(Rng &rng) {
    std::array<double, 4> e;
    double sum = 0.0;
    for (double &x : e) {
        x = rng.exponential();
        sum += x;
    }
    return bd_from_eigenvalues({e[0] / sum, e[1] / sum, e[2] / sum, e[3] / sum});
}

BellDiagonalState random_bd(std::uint64_t seed) {
    Rng rng(seed);
    return random_bd(rng);
}

}  // namespace bures
