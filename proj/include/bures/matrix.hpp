#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace bures {

using cplx = std::complex<double>;

/// Dense N x N complex matrix, row-major, value semantics.
template <std::size_t N>
class CMatrix {
  public:
    static constexpr std::size_t dim = N;

    constexpr CMatrix() = default;

    static CMatrix identity() {
        CMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMatrix diagonal(const std::array<double, N> &d) {
        CMatrix m;
        for (std::size_t i = 0; i < N; ++i) {
            m(i, i) = d[i];
        }
        return m;
    }

    cplx &operator()(std::size_t r, std::size_t c) {
        return data_[r * N + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return data_[r * N + c];
    }

    CMatrix adjoint() const {
        CMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : data_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    /// Largest entry of |M - M^dagger|.
    double hermiticity_defect() const {
        double worst = 0.0;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = r; c < N; ++c) {
                worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
            }
        }
        return worst;
    }

    /// (M + M^dagger) / 2 with an exactly real diagonal.
    CMatrix hermitian_part() const {
        CMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            out(r, r) = (*this)(r, r).real();
            for (std::size_t c = r + 1; c < N; ++c) {
                const cplx v = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
                out(r, c) = v;
                out(c, r) = std::conj(v);
            }
        }
        return out;
    }

    CMatrix &operator+=(const CMatrix &o) {
        for (std::size_t i = 0; i < N * N; ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }
    CMatrix &operator-=(const CMatrix &o) {
        for (std::size_t i = 0; i < N * N; ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }
    CMatrix &operator*=(cplx s) {
        for (auto &z : data_) {
            z *= s;
        }
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix &b) {
        return a += b;
    }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) {
        return a -= b;
    }
    friend CMatrix operator*(CMatrix a, cplx s) {
        return a *= s;
    }
    friend CMatrix operator*(cplx s, CMatrix a) {
        return a *= s;
    }

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b) {
        CMatrix out;
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                for (std::size_t c = 0; c < N; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

    friend bool operator==(const CMatrix &, const CMatrix &) = default;

  private:
    std::array<cplx, N * N> data_{};
};

using Matrix2 = CMatrix<2>;
using Matrix4 = CMatrix<4>;

/// Kronecker product; index (i, j) of the result is (2 i_a + i_b, 2 j_a + j_b).
inline Matrix4 kron(const Matrix2 &a, const Matrix2 &b) {
    Matrix4 out;
    for (std::size_t ra = 0; ra < 2; ++ra) {
        for (std::size_t ca = 0; ca < 2; ++ca) {
            for (std::size_t rb = 0; rb < 2; ++rb) {
                for (std::size_t cb = 0; cb < 2; ++cb) {
                    out(2 * ra + rb, 2 * ca + cb) = a(ra, ca) * b(rb, cb);
                }
            }
        }
    }
    return out;
}

/// Reduced state of the first qubit.
inline Matrix2 partial_trace_b(const Matrix4 &m) {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = m(2 * r, 2 * c) + m(2 * r + 1, 2 * c + 1);
        }
    }
    return out;
}

/// Reduced state of the second qubit.
inline Matrix2 partial_trace_a(const Matrix4 &m) {
    Matrix2 out;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            out(r, c) = m(r, c) + m(2 + r, 2 + c);
        }
    }
    return out;
}

/// Single-qubit state (I + v . sigma) / 2.
inline Matrix2 qubit_from_bloch(const std::array<double, 3> &v) {
    Matrix2 m;
    m(0, 0) = 0.5 * (1.0 + v[2]);
    m(1, 1) = 0.5 * (1.0 - v[2]);
    m(0, 1) = cplx(0.5 * v[0], -0.5 * v[1]);
    m(1, 0) = cplx(0.5 * v[0], 0.5 * v[1]);
    return m;
}

/// Bloch vector (Tr m sigma_x, Tr m sigma_y, Tr m sigma_z).
inline std::array<double, 3> bloch_from_qubit(const Matrix2 &m) {
    return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

namespace pauli {

inline Matrix2 x() {
    Matrix2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

inline Matrix2 y() {
    Matrix2 m;
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
}

inline Matrix2 z() {
    Matrix2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

}  // namespace pauli

}  // namespace bures
