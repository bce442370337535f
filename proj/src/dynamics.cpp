#include "bures/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bures/errors.hpp"
#include "parallel.hpp"

namespace bures {

namespace {

constexpr double kRelTol = 1e-10;
constexpr double kAbsTol = 1e-14;
constexpr unsigned kMaxDepth = 20;
constexpr double kScanStep = 0.01;
constexpr double kBisectWidth = 1e-10;

void check_s(double s) {
    if (!(s > 0.0) || !std::isfinite(s)) {
        throw DomainError("Ohmicity s must be positive, got " + std::to_string(s));
    }
}

struct Rate {
    double s;
    double gamma_s;

    double operator()(double nu) const {
        return std::pow(1.0 + nu * nu, -0.5 * s) * gamma_s * std::sin(s * std::atan(nu));
    }
};

Rate make_rate(double s) {
    check_s(s);
    return {s, std::tgamma(s)};
}

double integrate_rate(const Rate &rate, double nu0, double nu1) {
    if (nu1 == nu0) {
        return 0.0;
    }
    double error = 0.0;
    double l1 = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(rate, nu0, nu1, kMaxDepth,
                                                                                     kRelTol, &error, &l1);
    if (!(error <= std::max(kRelTol * l1, kAbsTol))) {
        throw QuadratureFailure("dephasing factor on [" + std::to_string(nu0) + ", " + std::to_string(nu1) +
                                "]: error estimate " + std::to_string(error) + " above tolerance");
    }
    return 2.0 * value;
}

// Bound on |Upsilon(infinity) - Upsilon(nu)| for s > 1, from
// |gamma| <= Gamma(s) nu^(-s).
double tail_bound(const Rate &rate, double nu) {
    if (rate.s <= 1.0 || nu <= 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 2.0 * rate.gamma_s * std::pow(nu, 1.0 - rate.s) / (rate.s - 1.0);
}

// First nu in [0, horizon] where reached(Upsilon(nu)) holds, assuming it
// becomes true no earlier than Upsilon first reaches `target` and that
// reached is false below it. Scans in kScanStep steps, then bisects.
std::optional<double> first_crossing(const Rate &rate, double horizon, double target,
                                     const std::function<bool(double)> &reached) {
    double nu = 0.0;
    double ups = 0.0;
    if (reached(ups)) {
        return 0.0;
    }
    while (nu < horizon) {
        const double next = std::min(horizon, nu + kScanStep);
        const double next_ups = ups + integrate_rate(rate, nu, next);
        if (reached(next_ups)) {
            double lo = nu, hi = next;
            while (hi - lo > kBisectWidth) {
                const double mid = 0.5 * (lo + hi);
                if (reached(ups + integrate_rate(rate, nu, mid))) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return 0.5 * (lo + hi);
        }
        nu = next;
        ups = next_ups;
        if (ups + tail_bound(rate, nu) < target) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

double two_lambda_max_minus_one(const BellDiagonalState &state) {
    const auto p = bd_eigenvalues(state).as_array();
    return 2.0 * *std::max_element(p.begin(), p.end()) - 1.0;
}

}  // namespace

double dephasing_rate(double nu, double s) {
    if (!(nu >= 0.0)) {
        throw DomainError("dimensionless time must be nonnegative");
    }
    return make_rate(s)(nu);
}

double dephasing_factor(double nu0, double nu1, double s) {
    if (!(nu0 >= 0.0) || !(nu1 >= 0.0)) {
        throw DomainError("dimensionless time must be nonnegative");
    }
    return integrate_rate(make_rate(s), nu0, nu1);
}

double dephasing_factor(double nu, double s) {
    return dephasing_factor(0.0, nu, s);
}

BellDiagonalState evolve_with_factor(const BellDiagonalState &state0, double upsilon) {
    const double q2 = std::exp(-2.0 * upsilon);
    return BellDiagonalState(q2 * state0.c1(), q2 * state0.c2(), state0.c3());
}

BellDiagonalState evolve(const BellDiagonalState &state0, double nu, double s) {
    return evolve_with_factor(state0, dephasing_factor(nu, s));
}

Matrix4 dephase(const Matrix4 &rho, double q) {
    Matrix4 out = rho;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const std::size_t diff = i ^ j;
            const int flips = static_cast<int>((diff & 1u) + ((diff >> 1) & 1u));
            out(i, j) *= std::pow(q, flips);
        }
    }
    return out;
}

std::optional<double> find_transition_time(const BellDiagonalState &state0, const BathSpec &bath, double horizon) {
    const Rate rate = make_rate(bath.s);
    const double cmax = std::max(std::abs(state0.c1()), std::abs(state0.c2()));
    const double c3 = std::abs(state0.c3());
    if (c3 == 0.0 || c3 >= cmax) {
        return std::nullopt;
    }
    const double target = -0.5 * std::log(c3 / cmax);
    return first_crossing(rate, horizon, target, [target](double ups) { return ups >= target; });
}

std::optional<double> find_esd_time(const BellDiagonalState &state0, const BathSpec &bath, double horizon) {
    const Rate rate = make_rate(bath.s);
    if (two_lambda_max_minus_one(state0) <= 0.0) {
        return 0.0;
    }
    // Each eigenvalue is (1 + u x + v)/4 with x = q^2, so the concurrence
    // vanishes exactly for x <= min over u > 0 of (1 - v)/u.
    const double c1 = state0.c1(), c2 = state0.c2(), c3 = state0.c3();
    const std::array<std::array<double, 2>, 4> uv{{{c1 - c2, c3}, {c2 - c1, c3}, {c1 + c2, -c3}, {-c1 - c2, -c3}}};
    double x_hi = std::numeric_limits<double>::infinity();
    for (const auto &[u, v] : uv) {
        if (u > 0.0) {
            x_hi = std::min(x_hi, (1.0 - v) / u);
        }
    }
    if (!(x_hi > 0.0)) {
        return std::nullopt;
    }
    const double target = -0.5 * std::log(x_hi);
    return first_crossing(rate, horizon, target, [&](double ups) {
        return two_lambda_max_minus_one(evolve_with_factor(state0, ups)) <= 0.0;
    });
}

DynamicsTrace trace_correlations(const BellDiagonalState &state0, const BathSpec &bath, double nu_max,
                                 int n_points, unsigned threads) {
    const Rate rate = make_rate(bath.s);
    if (!(bath.omega_c > 0.0)) {
        throw DomainError("cutoff frequency must be positive");
    }
    if (n_points < 2 || !(nu_max > 0.0)) {
        throw DomainError("trace needs nu_max > 0 and at least two points");
    }
    const auto n = static_cast<std::size_t>(n_points);
    DynamicsTrace out;
    out.nu_grid.resize(n);
    out.upsilon.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.nu_grid[i] = nu_max * static_cast<double>(i) / static_cast<double>(n - 1);
        out.upsilon[i] = i == 0 ? 0.0 : out.upsilon[i - 1] + integrate_rate(rate, out.nu_grid[i - 1], out.nu_grid[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.states.push_back(evolve_with_factor(state0, out.upsilon[i]));
    }
    out.reports.resize(n, full_report(state0));
    detail::parallel_for(n, threads, [&](std::size_t i) { out.reports[i] = full_report(out.states[i]); });
    out.t_star = find_transition_time(state0, bath);
    out.esd_time = find_esd_time(state0, bath);
    return out;
}

}  // namespace bures
