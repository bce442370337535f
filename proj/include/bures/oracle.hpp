#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bures/closed_form.hpp"
#include "bures/matrix.hpp"
#include "bures/nelder_mead.hpp"
#include "bures/states.hpp"

namespace bures {

/// Multi-start Nelder-Mead settings shared by all oracles.
struct SearchConfig {
    int restarts = 16;
    int max_iters = 4000;  ///< per restart
    double xtol = 1e-7;
    double ftol = 1e-12;
    std::uint64_t rng_seed = 1;
};

struct OracleResult {
    double best_value = 0.0;
    Params argmax;
    long evaluations = 0;
    bool converged = false;              ///< at least one restart met both tolerances
    std::vector<double> restart_best;    ///< best value so far after each restart
};

/// Product state from 6 parameters (a, b); each Bloch vector longer than 1 is
/// projected radially onto the sphere.
ProductState product_from_params(const Params &x);
Params product_params(const ProductState &p);

/// Maximum of F(rho, pi) over product states pi.
///
/// Restart i starts from seeds[i] when given, otherwise from a point drawn
/// uniformly from the two unit balls. The best run is polished by restarting
/// the simplex at its end point until it stops improving. Points outside a
/// ball are clamped and pay the squared overshoot as a penalty, so the search
/// sees no plateau there. argmax holds the 6 clamped Bloch components.
OracleResult max_fidelity_over_products(const DensityMatrix &rho, const SearchConfig &cfg,
                                        const std::vector<Params> &seeds = {});

/// Classical-quantum state p P(n) x rho(b0) + (1 - p) P(-n) x rho(b1) from the
/// 9 parameters (theta, phi, u, b0, b1): n is the unit vector with polar angle
/// theta and azimuth phi, p = sin^2 u, and b0, b1 are clamped like above.
Matrix4 cq_from_params(const Params &x);

/// Parameters of cq_from_params that reproduce the given product state.
Params cq_params_from_product(const ProductState &p);

/// Maximum of F(rho, chi) over classical-quantum states chi (9 parameters).
OracleResult max_fidelity_over_cq(const DensityMatrix &rho, const SearchConfig &cfg,
                                  const std::vector<Params> &seeds = {});

struct PlaneMaximum {
    double a;
    double b;
    double fidelity;
};

/// Local maxima of F(rho, pi(a e_l, b e_l)) over the square [-1, 1]^2, found by
/// 2-parameter searches from cfg.restarts random starts. Points closer than
/// 1e-4 are merged. Sorted by decreasing fidelity.
std::vector<PlaneMaximum> product_plane_maxima(const DensityMatrix &rho, int l, const SearchConfig &cfg);

/// Classical fidelity between cq_reference_diagonal({s, r}) and the product
/// state with Bloch vectors a e_3 and b e_3.
double reference_product_fidelity(double s, double r, double a, double b);

/// Maximizes reference_product_fidelity over (r, a, b) in [-1, 1]^3 by a
/// 41^3 grid through the origin followed by compass search.
///
/// Ties (within 1e-15) go to the point of smaller norm; at s = 1 the maximum is
/// attained on the whole line a = b and the origin is reported. argmax is
/// (r, a, b). Throws AnsatzViolation if the best point beats the origin by
/// more than 1e-9.
OracleResult classical_oracle(double s, const SearchConfig &cfg);

/// Runs classical_oracle at s = |s_k| of the closest classical-quantum state.
OracleResult classical_oracle(const BellDiagonalState &state, const SearchConfig &cfg);

/// Upper bound on the Bures distance from rho to the separable set, by
/// minimizing over mixtures of n_terms pure product states. Weights come from
/// a softmax of n_terms logits; each pure qubit state from a (theta, phi)
/// pair. best_value is the distance (not a fidelity).
OracleResult separable_upper_bound(const DensityMatrix &rho, int n_terms, const SearchConfig &cfg);

/// Mixture of pure product states encoded as in separable_upper_bound.
Matrix4 separable_from_params(const Params &x, int n_terms);

enum class SampleFamily { Uniform, Rank2 };

struct VerifySummary {
    std::string mode;
    std::size_t samples = 0;
    std::size_t violations = 0;
    double max_gap = 0.0;
};

/// Tolerances used by the batch checks.
inline constexpr double kOracleTolerance = 1e-6;
inline constexpr double kClassicalTolerance = 1e-9;

/// Sample i of a batch: random_bd seeded with derive_seed(seed, i), or for
/// the rank-2 family eigenvalues ((1 - c)/2, (1 + c)/2, 0, 0) with c uniform
/// on [0, 1) from the same stream.
BellDiagonalState batch_sample(std::uint64_t seed, std::size_t index, SampleFamily family);

/// For each sample, compares the numerical product-state maximum with the
/// closed-form branch fidelity. A violation is numeric > closed + 1e-6;
/// max_gap is the largest signed numeric - closed. The searches are not
/// seeded with the closed-form witness.
VerifySummary verify_product_ansatz(std::size_t n_samples, const SearchConfig &cfg, unsigned threads = 1,
                                    SampleFamily family = SampleFamily::Uniform);

/// Two-sided check of the classical-quantum maximum against (1 + 2 Lambda_max)/2.
/// max_gap is the largest absolute difference.
VerifySummary verify_cq(std::size_t n_samples, const SearchConfig &cfg, unsigned threads = 1);

/// classical_oracle on each sample. A violation is an AnsatzViolation or a
/// maximum that differs from the closed-form classical fidelity by more than
/// 1e-9.
VerifySummary verify_classical(std::size_t n_samples, const SearchConfig &cfg, unsigned threads = 1);

}  // namespace bures
