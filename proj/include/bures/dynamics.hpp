#pragma once

#include <optional>
#include <vector>

#include "bures/closed_form.hpp"
#include "bures/matrix.hpp"
#include "bures/states.hpp"

namespace bures {

/// Zero-temperature bosonic bath with spectral density ~ omega^s exp(-omega/omega_c).
/// Times are dimensionless (nu = omega_c t), so omega_c is carried for
/// completeness only.
struct BathSpec {
    double s = 1.0;
    double omega_c = 1.0;
};

inline constexpr double kDefaultSearchHorizon = 200.0;

/// gamma / omega_c = (1 + nu^2)^(-s/2) Gamma(s) sin(s atan nu).
/// Throws DomainError if s <= 0 or nu < 0.
double dephasing_rate(double nu, double s);

/// Upsilon(nu) = 2 int_0^nu gamma, by adaptive Gauss-Kronrod quadrature
/// (relative tolerance 1e-10, absolute 1e-14). Throws QuadratureFailure if the
/// error estimate stays above tolerance.
double dephasing_factor(double nu, double s);

/// 2 int_{nu0}^{nu1} gamma.
double dephasing_factor(double nu0, double nu1, double s);

/// c1, c2 scaled by q^2 = exp(-2 Upsilon(nu)); c3 unchanged.
BellDiagonalState evolve(const BellDiagonalState &state0, double nu, double s);

/// Same map for a known Upsilon value.
BellDiagonalState evolve_with_factor(const BellDiagonalState &state0, double upsilon);

/// Local dephasing on both qubits applied to a 4x4 matrix: entry (i, j) is
/// multiplied by q for every qubit whose bit differs between i and j.
Matrix4 dephase(const Matrix4 &rho, double q);

struct DynamicsTrace {
    std::vector<double> nu_grid;
    std::vector<double> upsilon;
    std::vector<BellDiagonalState> states;
    std::vector<CorrelationReport> reports;
    std::optional<double> t_star;
    std::optional<double> esd_time;
};

/// Uniform grid of n_points on [0, nu_max]. Upsilon is accumulated segment by
/// segment on one thread; the reports are then computed on `threads` workers.
/// Event times come from find_transition_time and find_esd_time.
DynamicsTrace trace_correlations(const BellDiagonalState &state0, const BathSpec &bath, double nu_max,
                                 int n_points, unsigned threads = 1);

/// Earliest nu with q^2(nu) |c_max(0)| = |c3(0)|, where c_max is whichever of
/// c1, c2 is larger in magnitude. Absent when |c3(0)| >= |c_max(0)|, when c3 is
/// zero, or when Upsilon never reaches the target on [0, horizon]. Located by
/// a 0.01 scan and bisection to 1e-10.
std::optional<double> find_transition_time(const BellDiagonalState &state0, const BathSpec &bath,
                                           double horizon = kDefaultSearchHorizon);

/// Earliest nu at which the concurrence of the evolved state reaches zero
/// (0 if it is zero initially), by the same scan and bisection on
/// 2 lambda_max - 1. Absent if it stays positive on [0, horizon].
std::optional<double> find_esd_time(const BellDiagonalState &state0, const BathSpec &bath,
                                    double horizon = kDefaultSearchHorizon);

}  // namespace bures
