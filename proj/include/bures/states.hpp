#pragma once

#include <array>
#include <cstdint>

#include "bures/matrix.hpp"
#include "bures/rng.hpp"

namespace bures {

/// Tolerance for membership of the Bell tetrahedron. Eigenvalues in
/// [-kValidTolerance, 0) are treated as round-off and clamped to zero.
inline constexpr double kValidTolerance = 1e-12;

/// Eigenvalues of a Bell-diagonal state, labelled as
///   alpha = (1 + c1 - c2 + c3) / 4,  beta  = (1 - c1 + c2 + c3) / 4,
///   gamma = (1 + c1 + c2 - c3) / 4,  delta = (1 - c1 - c2 - c3) / 4.
struct BdEigenvalues {
    double alpha = 0.25;
    double beta = 0.25;
    double gamma = 0.25;
    double delta = 0.25;

    std::array<double, 4> as_array() const {
        return {alpha, beta, gamma, delta};
    }
};

/// Two-qubit state (I + c1 XX + c2 YY + c3 ZZ) / 4.
///
/// Construction validates that the coefficients lie in the tetrahedron with
/// vertices (1,-1,1), (-1,1,1), (1,1,-1), (-1,-1,-1).
class BellDiagonalState {
  public:
    /// Throws InvalidState outside the tetrahedron (or on non-finite input).
    BellDiagonalState(double c1, double c2, double c3);

    double c1() const {
        return c_[0];
    }
    double c2() const {
        return c_[1];
    }
    double c3() const {
        return c_[2];
    }
    /// 1-based access matching the Pauli index.
    double c(int i) const {
        return c_[static_cast<std::size_t>(i - 1)];
    }
    const std::array<double, 3> &coefficients() const {
        return c_;
    }

    friend bool operator==(const BellDiagonalState &, const BellDiagonalState &) = default;

  private:
    std::array<double, 3> c_;
};

/// Validated 4x4 density matrix in the basis |00>, |01>, |10>, |11>.
class DensityMatrix {
  public:
    /// Checks Hermiticity and unit trace to 1e-12 and eigenvalues >= -1e-10.
    static DensityMatrix from_matrix(const Matrix4 &m);

    /// Wraps a matrix that is a density matrix by construction. No checks.
    static DensityMatrix unchecked(const Matrix4 &m) {
        return DensityMatrix(m);
    }

    const Matrix4 &matrix() const {
        return m_;
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return m_(r, c);
    }

  private:
    explicit DensityMatrix(const Matrix4 &m) : m_(m) {
    }
    Matrix4 m_;
};

/// Product state described by the Bloch vectors of the two qubits.
class ProductState {
  public:
    /// Throws InvalidState when either vector is longer than 1 + 1e-12.
    ProductState(const std::array<double, 3> &a, const std::array<double, 3> &b);

    const std::array<double, 3> &a() const {
        return a_;
    }
    const std::array<double, 3> &b() const {
        return b_;
    }

  private:
    std::array<double, 3> a_;
    std::array<double, 3> b_;
};

/// Member of the diagonal one-parameter classical-quantum family
///   (1+s)/4 (|00><00| + |11><11|) + (1-s)/4 ((1+r)|01><01| + (1-r)|10><10|).
/// r = 0 gives the Bell-diagonal state with coefficients (0, 0, s).
struct CqReference {
    double s = 0.0;
    double r = 0.0;
};

BellDiagonalState bd_from_c(double c1, double c2, double c3);

/// Eigenvalues with round-off negatives clamped to zero.
BdEigenvalues bd_eigenvalues(const BellDiagonalState &state);

/// Inverse of bd_eigenvalues. Entries down to -1e-10 are clamped and the
/// vector is renormalized; anything worse, or a sum off by more than 1e-10,
/// throws InvalidState.
BellDiagonalState bd_from_eigenvalues(const BdEigenvalues &ev);

DensityMatrix bd_to_density(const BellDiagonalState &state);
DensityMatrix product_to_density(const ProductState &p);

/// Throws InvalidState unless |s| <= 1 and |r| <= 1.
DensityMatrix cq_reference_density(const CqReference &q);

/// Diagonal of cq_reference_density.
std::array<double, 4> cq_reference_diagonal(const CqReference &q);

/// Bell-diagonal state with eigenvalues uniform on the probability simplex
/// (normalized i.i.d. unit exponentials drawn from Rng).
BellDiagonalState random_bd(std::uint64_t seed);
BellDiagonalState random_bd(Rng &rng);

}  // namespace bures
