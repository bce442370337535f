#include "bures/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bures/errors.hpp"

namespace bures {

namespace {

constexpr double kHermitianTolerance = 1e-8;
constexpr double kJacobiThreshold = 1e-14;
constexpr int kMaxSweeps = 100;
constexpr double kPsdTolerance = 1e-8;

// In-place cyclic Jacobi. On return `a` is diagonal (to the threshold) and
// `v`, when given, holds the accumulated rotations as columns.
template <std::size_t N>
void jacobi_diagonalize(CMatrix<N> &a, CMatrix<N> *v) {
    const double scale = a.frobenius_norm();
    if (scale == 0.0) {
        return;
    }
    const double threshold = kJacobiThreshold * scale;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (std::sqrt(2.0 * off) <= threshold) {
            return;
        }
        for (std::size_t p = 0; p < N; ++p) {
            for (std::size_t q = p + 1; q < N; ++q) {
                const cplx apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const cplx phase = apq / g;
                const cplx phase_conj = std::conj(phase);
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
                double t;
                if (std::abs(tau) > 1e150) {
                    t = 0.5 / tau;
                } else {
                    t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < N; ++k) {
                    const cplx akp = a(k, p);
                    const cplx akq = a(k, q);
                    a(k, p) = c * akp - s * phase_conj * akq;
                    a(k, q) = s * akp + c * phase_conj * akq;
                }
                for (std::size_t k = 0; k < N; ++k) {
                    const cplx apk = a(p, k);
                    const cplx aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (v != nullptr) {
                    for (std::size_t k = 0; k < N; ++k) {
                        const cplx vkp = (*v)(k, p);
                        const cplx vkq = (*v)(k, q);
                        (*v)(k, p) = c * vkp - s * phase_conj * vkq;
                        (*v)(k, q) = s * vkp + c * phase_conj * vkq;
                    }
                }
            }
        }
    }
}

template <std::size_t N>
CMatrix<N> checked_hermitian(const CMatrix<N> &m) {
    if (m.hermiticity_defect() > kHermitianTolerance) {
        throw NonHermitian("matrix is not Hermitian to 1e-8");
    }
    return m.hermitian_part();
}

}  // namespace

template <std::size_t N>
EigenSystem<N> hermitian_eig(const CMatrix<N> &m) {
    CMatrix<N> a = checked_hermitian(m);
    CMatrix<N> v = CMatrix<N>::identity();
    jacobi_diagonalize(a, &v);

    std::array<std::size_t, N> order;
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenSystem<N> out;
    for (std::size_t col = 0; col < N; ++col) {
        out.eigenvalues[col] = a(order[col], order[col]).real();
        for (std::size_t row = 0; row < N; ++row) {
            out.eigenvectors(row, col) = v(row, order[col]);
        }
    }
    return out;
}

template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N> &m) {
    CMatrix<N> a = checked_hermitian(m);
    jacobi_diagonalize<N>(a, nullptr);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = a(i, i).real();
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <std::size_t N>
CMatrix<N> matrix_sqrt_psd(const CMatrix<N> &m) {
    const EigenSystem<N> es = hermitian_eig(m);
    if (es.eigenvalues[0] < -kPsdTolerance) {
        throw NotPsd("matrix has an eigenvalue below -1e-8");
    }
    CMatrix<N> out;
    for (std::size_t k = 0; k < N; ++k) {
        const double root = std::sqrt(std::max(0.0, es.eigenvalues[k]));
        if (root == 0.0) {
            continue;
        }
        for (std::size_t r = 0; r < N; ++r) {
            const cplx vr = root * es.eigenvectors(r, k);
            for (std::size_t c = 0; c < N; ++c) {
                out(r, c) += vr * std::conj(es.eigenvectors(c, k));
            }
        }
    }
    return out;
}

template EigenSystem<2> hermitian_eig(const CMatrix<2> &);
template EigenSystem<4> hermitian_eig(const CMatrix<4> &);
template std::array<double, 2> hermitian_eigenvalues(const CMatrix<2> &);
template std::array<double, 4> hermitian_eigenvalues(const CMatrix<4> &);
template CMatrix<2> matrix_sqrt_psd(const CMatrix<2> &);
template CMatrix<4> matrix_sqrt_psd(const CMatrix<4> &);

FidelityKernel::FidelityKernel(const Matrix4 &rho) : sqrt_rho_(matrix_sqrt_psd(rho)) {
}

double FidelityKernel::operator()(const Matrix4 &sigma) const {
    const Matrix4 inner = (sqrt_rho_ * sigma * sqrt_rho_).hermitian_part();
    CMatrix<4> a = inner;
    jacobi_diagonalize<4>(a, nullptr);
    double root_sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        root_sum += std::sqrt(std::max(0.0, a(i, i).real()));
    }
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double uhlmann_fidelity(const Matrix4 &rho, const Matrix4 &sigma) {
    return FidelityKernel(rho)(sigma);
}

double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return uhlmann_fidelity(rho.matrix(), sigma.matrix());
}

double bures_from_fidelity_deficit(double deficit) {
    deficit = std::clamp(deficit, 0.0, 1.0);
    const double root_f = std::sqrt(1.0 - deficit);
    // 1 - sqrt(F) = (1 - F) / (1 + sqrt(F))
    return std::sqrt(2.0 * deficit / (1.0 + root_f));
}

double bures_from_fidelity(double fidelity) {
    return bures_from_fidelity_deficit(1.0 - std::clamp(fidelity, 0.0, 1.0));
}

double bures_distance(const DensityMatrix &rho, const DensityMatrix &sigma) {
    return bures_from_fidelity(uhlmann_fidelity(rho, sigma));
}

double classical_fidelity(const std::array<double, 4> &p, const std::array<double, 4> &q) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        s += std::sqrt(std::max(0.0, p[i]) * std::max(0.0, q[i]));
    }
    return s * s;
}

}  // namespace bures
