#pragma once

#include <array>

#include "bures/matrix.hpp"
#include "bures/states.hpp"

namespace bures {

/// Spectral decomposition M = V diag(eigenvalues) V^dagger.
template <std::size_t N>
struct EigenSystem {
    std::array<double, N> eigenvalues{};  ///< ascending
    CMatrix<N> eigenvectors;              ///< orthonormal columns
};

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// The input is symmetrized before rotating. Sweeps stop once the off-diagonal
/// Frobenius norm drops below 1e-14 relative to the matrix norm (at most 100
/// sweeps). Throws NonHermitian if |M - M^dagger| has an entry above 1e-8.
template <std::size_t N>
EigenSystem<N> hermitian_eig(const CMatrix<N> &m);

/// Eigenvalues only (ascending); same algorithm without the vector updates.
template <std::size_t N>
std::array<double, N> hermitian_eigenvalues(const CMatrix<N> &m);

/// Principal square root of a positive semidefinite matrix. Eigenvalues in
/// [-1e-8, 0) are clamped to zero; anything more negative throws NotPsd.
template <std::size_t N>
CMatrix<N> matrix_sqrt_psd(const CMatrix<N> &m);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, clamped to [0, 1].
double uhlmann_fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);
double uhlmann_fidelity(const Matrix4 &rho, const Matrix4 &sigma);

/// sqrt(2 (1 - sqrt(F))), in [0, sqrt(2)].
double bures_distance(const DensityMatrix &rho, const DensityMatrix &sigma);

/// Bures distance expressed through a fidelity value.
double bures_from_fidelity(double fidelity);

/// Bures distance from the fidelity deficit 1 - F, which stays accurate when
/// F is within round-off of 1.
double bures_from_fidelity_deficit(double deficit);

/// (sum_i sqrt(p_i q_i))^2 for two probability vectors.
double classical_fidelity(const std::array<double, 4> &p, const std::array<double, 4> &q);

/// Fidelity against a fixed first argument, with sqrt(rho) computed once.
/// The optimization oracles evaluate thousands of candidates per state.
class FidelityKernel {
  public:
    explicit FidelityKernel(const Matrix4 &rho);

    double operator()(const Matrix4 &sigma) const;

  private:
    Matrix4 sqrt_rho_;
};

}  // namespace bures
