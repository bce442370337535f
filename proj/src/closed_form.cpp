#include "bures/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bures/errors.hpp"
#include "bures/fidelity.hpp"

namespace bures {

namespace {

constexpr double kBranchTolerance = 1e-12;

struct Roots {
    double a, b, g, d;
};

Roots roots(const BdEigenvalues &ev) {
    return {std::sqrt(ev.alpha), std::sqrt(ev.beta), std::sqrt(ev.gamma), std::sqrt(ev.delta)};
}

double sq(double x) {
    return x * x;
}

// Index (0-based) of the largest |c_k|, smallest index on ties.
int argmax_abs(const std::array<double, 3> &c) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(c[i]) > std::abs(c[best])) {
            best = i;
        }
    }
    return best;
}

int argmin_abs(const std::array<double, 3> &c) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
        if (std::abs(c[i]) < std::abs(c[best])) {
            best = i;
        }
    }
    return best;
}

std::array<double, 4> reorder_for_axis(const BdEigenvalues &ev, int l) {
    switch (l) {
    case 1:
        return {ev.alpha, ev.gamma, ev.beta, ev.delta};
    case 2:
        return {ev.beta, ev.gamma, ev.alpha, ev.delta};
    default:
        return {ev.alpha, ev.beta, ev.gamma, ev.delta};
    }
}

// Sign branch evaluated for the pair (p1, p2) carrying the sign of c_l and
// the complementary pair (p3, p4). Returns false if the branch condition fails.
struct SignCandidate {
    bool applies = false;
    double a = 0.0;
    double fidelity = 0.0;
};

SignCandidate sign_branch(double p1, double p2, double p3, double p4) {
    const double r1 = std::sqrt(p1), r2 = std::sqrt(p2), r3 = std::sqrt(p3), r4 = std::sqrt(p4);
    const double diff = sq(r1 - r2);
    const double sum12 = r1 + r2;
    const double sum34 = r3 + r4;
    SignCandidate out;
    if (!(diff > sum34 * sum12)) {
        return out;
    }
    const double num = sq(diff) - sq(sum34) * sq(sum12);
    const double den = sq(diff) + sq(sum34) * diff;
    const double a2 = num / den;
    if (!(a2 >= -kBranchTolerance && a2 <= 1.0 + kBranchTolerance)) {
        throw BranchInconsistency("product-state branch gives a^2 = " + std::to_string(a2) + " outside [0, 1]");
    }
    out.applies = true;
    out.a = std::sqrt(std::clamp(a2, 0.0, 1.0));
    out.fidelity = (p1 + p2) * (1.0 - 2.0 * r1 * r2 + 2.0 * r3 * r4) / (2.0 * diff);
    return out;
}

double zero_branch_fidelity(const BdEigenvalues &ev) {
    const Roots r = roots(ev);
    const double half_sum = 0.5 * (r.a + r.b + r.g + r.d);
    return half_sum * half_sum;
}

// 1 - sqrt(F0) = sum_i (sqrt(p_i) - 1/2)^2 / 2.
double zero_branch_root_deficit(const BdEigenvalues &ev) {
    const Roots r = roots(ev);
    return 0.5 * (sq(r.a - 0.5) + sq(r.b - 0.5) + sq(r.g - 0.5) + sq(r.d - 0.5));
}

double bures_from_root_deficit(double root_deficit) {
    return std::sqrt(2.0 * std::max(0.0, root_deficit));
}

void require_unit_interval(double x, bool include_one, const char *what) {
    const bool ok = x >= 0.0 && (include_one ? x <= 1.0 : x < 1.0);
    if (!ok) {
        throw DomainError(std::string(what) + " = " + std::to_string(x) + " is outside " +
                          (include_one ? "[0, 1]" : "[0, 1)"));
    }
}

}  // namespace

std::string_view branch_name(Branch b) {
    switch (b) {
    case Branch::Plus:
        return "plus";
    case Branch::Minus:
        return "minus";
    case Branch::Zero:
        return "zero";
    }
    return "zero";
}

std::array<double, 3> lambdas(const BdEigenvalues &ev) {
    const Roots r = roots(ev);
    return {r.a * r.g + r.b * r.d, r.a * r.d + r.b * r.g, r.a * r.b + r.g * r.d};
}

std::array<double, 3> lambda_deficits(const BdEigenvalues &ev) {
    const Roots r = roots(ev);
    return {
        sq(r.a - r.g) + sq(r.b - r.d),
        sq(r.a - r.d) + sq(r.b - r.g),
        sq(r.a - r.b) + sq(r.g - r.d),
    };
}

std::array<double, 3> s_params(const BdEigenvalues &ev) {
    const Roots r = roots(ev);
    const auto lam = lambdas(ev);
    return {
        (ev.alpha + ev.gamma - ev.beta - ev.delta + 2.0 * (r.a * r.g - r.b * r.d)) / (1.0 + 2.0 * lam[0]),
        (ev.beta + ev.gamma - ev.alpha - ev.delta + 2.0 * (r.b * r.g - r.a * r.d)) / (1.0 + 2.0 * lam[1]),
        (ev.alpha + ev.beta - ev.gamma - ev.delta + 2.0 * (r.a * r.b - r.g * r.d)) / (1.0 + 2.0 * lam[2]),
    };
}

ClosestCqWitness closest_cq(const BellDiagonalState &state) {
    const int k = argmax_abs(state.coefficients());
    const double s = std::clamp(s_params(bd_eigenvalues(state))[static_cast<std::size_t>(k)], -1.0, 1.0);
    std::array<double, 3> c{0.0, 0.0, 0.0};
    c[static_cast<std::size_t>(k)] = s;
    return {k + 1, s, BellDiagonalState(c[0], c[1], c[2])};
}

double closest_cq_fidelity(const BellDiagonalState &state) {
    const int k = argmax_abs(state.coefficients());
    return 0.5 * (1.0 + 2.0 * lambdas(bd_eigenvalues(state))[static_cast<std::size_t>(k)]);
}

double quantum_correlations(const BellDiagonalState &state) {
    const int k = argmax_abs(state.coefficients());
    const double d = lambda_deficits(bd_eigenvalues(state))[static_cast<std::size_t>(k)];
    return bures_from_fidelity_deficit(0.5 * d);
}

double concurrence(const BellDiagonalState &state) {
    const auto p = bd_eigenvalues(state).as_array();
    const double lmax = *std::max_element(p.begin(), p.end());
    return std::max(0.0, 2.0 * lmax - 1.0);
}

double entanglement(const BellDiagonalState &state) {
    const double con = concurrence(state);
    const double root = std::sqrt(std::max(0.0, 1.0 - con * con));
    return bures_from_fidelity_deficit(con * con / (2.0 * (1.0 + root)));
}

double classical_correlation_fidelity(const BellDiagonalState &state) {
    const auto lam = lambdas(bd_eigenvalues(state));
    const int k = argmax_abs(state.coefficients());
    return (1.0 + 2.0 * (lam[0] + lam[1] + lam[2])) / (2.0 * (1.0 + 2.0 * lam[static_cast<std::size_t>(k)]));
}

double classical_correlations(const BellDiagonalState &state) {
    const BdEigenvalues ev = bd_eigenvalues(state);
    const auto d = lambda_deficits(ev);
    const auto lam = lambdas(ev);
    const auto k = static_cast<std::size_t>(argmax_abs(state.coefficients()));
    const std::size_t i = (k + 1) % 3, j = (k + 2) % 3;
    const double deficit = std::max(0.0, d[i] + d[j] - d[k]) / (2.0 * (1.0 + 2.0 * lam[k]));
    return bures_from_fidelity_deficit(deficit);
}

ClosestProductWitness closest_product(const BellDiagonalState &state) {
    const BdEigenvalues ev = bd_eigenvalues(state);
    const int l = argmin_abs(state.coefficients()) + 1;
    const double cl = state.c(l);
    const auto mu = reorder_for_axis(ev, l);
    const double f0 = zero_branch_fidelity(ev);

    ClosestProductWitness w{l, 0.0, 0.0, Branch::Zero, mu, f0};

    SignCandidate plus, minus;
    if (cl >= 0.0) {
        plus = sign_branch(mu[0], mu[1], mu[2], mu[3]);
    }
    if (cl <= 0.0) {
        minus = sign_branch(mu[2], mu[3], mu[0], mu[1]);
    }
    const auto consider = [&](const SignCandidate &cand, Branch branch) {
        if (!cand.applies) {
            return;
        }
        if (cand.fidelity < f0 - kBranchTolerance) {
            throw BranchInconsistency(std::string(branch_name(branch)) +
                                      " branch selected but its fidelity " + std::to_string(cand.fidelity) +
                                      " is below the product-of-marginals value " + std::to_string(f0));
        }
        if (w.branch == Branch::Zero || cand.fidelity > w.fidelity) {
            w.branch = branch;
            w.a = cand.a;
            w.b = branch == Branch::Plus ? cand.a : -cand.a;
            w.fidelity = std::min(1.0, cand.fidelity);
        }
    };
    consider(plus, Branch::Plus);
    consider(minus, Branch::Minus);
    return w;
}

ProductState product_state_of(const ClosestProductWitness &w) {
    std::array<double, 3> a{0.0, 0.0, 0.0};
    std::array<double, 3> b{0.0, 0.0, 0.0};
    a[static_cast<std::size_t>(w.l - 1)] = w.a;
    b[static_cast<std::size_t>(w.l - 1)] = w.b;
    return ProductState(a, b);
}

namespace {

double total_from_witness(const BellDiagonalState &state, const ClosestProductWitness &w) {
    if (w.branch == Branch::Zero) {
        return bures_from_root_deficit(zero_branch_root_deficit(bd_eigenvalues(state)));
    }
    return bures_from_fidelity(w.fidelity);
}

}  // namespace

double total_correlations(const BellDiagonalState &state) {
    return total_from_witness(state, closest_product(state));
}

CorrelationReport full_report(const BellDiagonalState &state) {
    const ClosestProductWitness pw = closest_product(state);
    return {
        entanglement(state),
        quantum_correlations(state),
        classical_correlations(state),
        total_from_witness(state, pw),
        closest_cq(state),
        pw,
    };
}

CorrelationReport werner_report(double r) {
    require_unit_interval(r, true, "Werner parameter r");
    const double disc = std::sqrt(std::max(0.0, 1.0 + 2.0 * r - 3.0 * r * r));
    const double e2 = r <= 1.0 / 3.0 ? 0.0 : 2.0 - std::sqrt(2.0 + std::sqrt(3.0 * (1.0 + 2.0 * r - 3.0 * r * r)));
    const double q_inner = 3.0 - r + disc;
    const double q2 = 2.0 - std::sqrt(q_inner);
    const double c2 = 2.0 - (3.0 * std::sqrt(1.0 - r) + std::sqrt(1.0 + 3.0 * r)) / std::sqrt(q_inner);
    double t2;
    if (r < kWernerProductThreshold) {
        t2 = 0.5 * (4.0 - 3.0 * std::sqrt(1.0 - r) - std::sqrt(1.0 + 3.0 * r));
    } else {
        t2 = 2.0 - std::sqrt((r + 1.0) * (3.0 - r - disc) / (1.0 + r - disc));
    }
    const BellDiagonalState state(r, -r, r);
    return {
        std::sqrt(std::max(0.0, e2)),
        std::sqrt(std::max(0.0, q2)),
        std::sqrt(std::max(0.0, c2)),
        std::sqrt(std::max(0.0, t2)),
        closest_cq(state),
        closest_product(state),
    };
}

CorrelationReport rank2_report(double c) {
    require_unit_interval(c, false, "rank-2 parameter c");
    const double eq2 = 2.0 - std::sqrt(2.0) * std::sqrt(1.0 + std::sqrt(1.0 - c * c));
    const double ct2 = 2.0 - std::sqrt(2.0);
    const BellDiagonalState state = bd_from_eigenvalues({0.5 * (1.0 - c), 0.5 * (1.0 + c), 0.0, 0.0});
    const double eq = std::sqrt(std::max(0.0, eq2));
    const double ct = std::sqrt(ct2);
    return {eq, eq, ct, ct, closest_cq(state), closest_product(state)};
}

}  // namespace bures
