#pragma once

#include <array>
#include <string_view>

#include "bures/states.hpp"

namespace bures {

/// Closest Bell-diagonal classical-quantum state chi = (I + s_k sigma_k sigma_k)/4.
struct ClosestCqWitness {
    int k;               ///< argmax |c_k|, smallest index on ties
    double s_k;          ///< coefficient of chi at slot k
    BellDiagonalState chi;
};

/// Which of the three maximizers of the product-state ansatz applies.
enum class Branch { Plus, Minus, Zero };

std::string_view branch_name(Branch b);

/// Closest product state of the form a_i = a delta_il, b_i = b delta_il.
struct ClosestProductWitness {
    int l;                      ///< argmin |c_l|, smallest index on ties
    double a;                   ///< nonnegative representative; (-a, -b) is equally close
    double b;                   ///< a for Plus, -a for Minus, 0 for Zero
    Branch branch;
    std::array<double, 4> mu;   ///< eigenvalues reordered for axis l
    double fidelity;            ///< fidelity between the state and this product state
};

/// Bures-distance correlation quantifiers and the states that realize them.
struct CorrelationReport {
    double E;  ///< entanglement
    double Q;  ///< quantum (discord-type) correlations
    double C;  ///< classical correlations
    double T;  ///< total correlations
    ClosestCqWitness cq_witness;
    ClosestProductWitness product_witness;
};

/// (Lambda_1, Lambda_2, Lambda_3) with
///   Lambda_1 = sqrt(alpha gamma) + sqrt(beta delta),
///   Lambda_2 = sqrt(alpha delta) + sqrt(beta gamma),
///   Lambda_3 = sqrt(alpha beta)  + sqrt(gamma delta).
std::array<double, 3> lambdas(const BdEigenvalues &ev);

/// 1 - 2 Lambda_i written as a sum of squares, e.g.
/// 1 - 2 Lambda_1 = (sqrt(alpha) - sqrt(gamma))^2 + (sqrt(beta) - sqrt(delta))^2.
/// Exact zeros survive, which keeps distances near zero accurate.
std::array<double, 3> lambda_deficits(const BdEigenvalues &ev);

/// (s_1, s_2, s_3): the coefficient the closest classical-quantum state would
/// carry if its axis were 1, 2 or 3.
std::array<double, 3> s_params(const BdEigenvalues &ev);

ClosestCqWitness closest_cq(const BellDiagonalState &state);

/// Fidelity to the closest classical-quantum state, (1 + 2 Lambda_max) / 2.
double closest_cq_fidelity(const BellDiagonalState &state);

double quantum_correlations(const BellDiagonalState &state);

/// max{0, lambda_1 - lambda_2 - lambda_3 - lambda_4} over eigenvalues sorted
/// in non-increasing order.
double concurrence(const BellDiagonalState &state);

double entanglement(const BellDiagonalState &state);

/// Fidelity between the closest BD classical-quantum state and I/4:
///   (1 + 2 (Lambda_1 + Lambda_2 + Lambda_3)) / (2 (1 + 2 Lambda_max)).
double classical_correlation_fidelity(const BellDiagonalState &state);

double classical_correlations(const BellDiagonalState &state);

/// Closest product state under the axis-l ansatz.
///
/// Plus applies when c_l > 0 and (sqrt mu1 - sqrt mu2)^2 > (sqrt mu3 + sqrt mu4)(sqrt mu1 + sqrt mu2);
/// Minus when c_l < 0 and (sqrt mu3 - sqrt mu4)^2 > (sqrt mu1 + sqrt mu2)(sqrt mu3 + sqrt mu4);
/// otherwise Zero (the product of the marginals, I/4). Both inequalities are
/// strict. With c_l = 0 both sign branches are tried.
///
/// Throws BranchInconsistency if a sign branch is selected but does not beat
/// the Zero branch.
ClosestProductWitness closest_product(const BellDiagonalState &state);

/// Product state with Bloch vectors a e_l and b e_l.
ProductState product_state_of(const ClosestProductWitness &w);

double total_correlations(const BellDiagonalState &state);

CorrelationReport full_report(const BellDiagonalState &state);

/// Werner state r |Phi><Phi| + (1 - r) I/4, r in [0, 1]. The four quantifiers
/// come from dedicated one-parameter formulas, not from full_report, so each
/// can cross-check the other. Throws DomainError outside [0, 1].
CorrelationReport werner_report(double r);

/// Werner threshold above which the closest product state is not I/4.
inline const double kWernerProductThreshold = (1.0 + 2.2360679774997896964) / 4.0;

/// Rank-2 state with eigenvalues ((1 - c)/2, (1 + c)/2, 0, 0), c in [0, 1).
/// Dedicated formulas as for werner_report. Throws DomainError outside [0, 1).
CorrelationReport rank2_report(double c);

}  // namespace bures
