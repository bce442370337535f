#include <gtest/gtest.h>

#include <cmath>

#include "bures/closed_form.hpp"
#include "bures/errors.hpp"
#include "bures/fidelity.hpp"
#include "bures/nelder_mead.hpp"
#include "bures/oracle.hpp"
#include "reference.hpp"

using namespace bures;

namespace {

const double kBellValue = std::sqrt(2 - std::sqrt(2.0));

DensityMatrix plus_branch_density() {
    return bd_to_density(bd_from_eigenvalues({0.874168, 0.001239, 0.026908, 0.097685}));
}

}  // namespace

TEST(nelder_mead, quadratic_and_rosenbrock) {
    const auto quad = [](const Params &x) { return (x[0] - 1) * (x[0] - 1) + 4 * (x[1] + 2) * (x[1] + 2); };
    NelderMeadOptions opt;
    auto r = nelder_mead_minimize(quad, {0, 0}, opt);
    ASSERT_TRUE(r.converged);
    ASSERT_NEAR(r.x[0], 1, 1e-6);
    ASSERT_NEAR(r.x[1], -2, 1e-6);

    const auto rosen = [](const Params &x) {
        return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
    };
    opt.max_iters = 20000;
    r = nelder_mead_minimize(rosen, {-1.2, 1}, opt);
    ASSERT_NEAR(r.x[0], 1, 1e-5);
    ASSERT_NEAR(r.x[1], 1, 1e-5);

    const auto line = [](const Params &x) { return std::abs(x[0] - 0.3); };
    r = nelder_mead_minimize(line, {2}, opt);
    ASSERT_NEAR(r.x[0], 0.3, 1e-8);
}

TEST(product_params, round_trip_and_clamp) {
    const ProductState p({0.1, -0.2, 0.3}, {0, 0.5, -0.5});
    const auto back = product_from_params(product_params(p));
    ASSERT_EQ(back.a(), p.a());
    ASSERT_EQ(back.b(), p.b());
    const auto clamped = product_from_params({3, 0, 4, 0, 0, 0});
    ASSERT_NEAR(clamped.a()[0], 0.6, 1e-15);
    ASSERT_NEAR(clamped.a()[2], 0.8, 1e-15);
}

TEST(cq_params, reproduce_product) {
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
        const ProductState p(rng.in_unit_ball(), rng.in_unit_ball());
        const Matrix4 m = cq_from_params(cq_params_from_product(p));
        ASSERT_LT((m - product_to_density(p).matrix()).frobenius_norm(), 1e-12);
    }
}

TEST(product_oracle, examples) {
    SearchConfig cfg;
    auto r = max_fidelity_over_products(bd_to_density(bd_from_c(0, 0, 0)), cfg);
    ASSERT_NEAR(r.best_value, 1.0, 1e-9);
    r = max_fidelity_over_products(bd_to_density(bd_from_c(1, -1, 1)), cfg);
    ASSERT_NEAR(r.best_value, 0.5, 1e-9);
    ASSERT_EQ(r.argmax.size(), 6u);
    ASSERT_EQ(r.restart_best.size(), static_cast<std::size_t>(cfg.restarts));
}

TEST(product_oracle, plus_branch_value) {
    const auto rho = plus_branch_density();
    const auto w = closest_product(bd_from_eigenvalues({0.874168, 0.001239, 0.026908, 0.097685}));
    const auto r = max_fidelity_over_products(rho, SearchConfig{});
    ASSERT_NEAR(r.best_value, w.fidelity, 1e-6);
    ASSERT_LE(r.best_value, w.fidelity + 1e-6);
    ASSERT_NEAR(w.fidelity, 0.560502, 1e-6);
    // The maximizer lies on the third axis with equal components.
    ASSERT_NEAR(std::abs(r.argmax[2]), 0.725398, 1e-3);
    ASSERT_NEAR(r.argmax[5], r.argmax[2], 1e-3);
}

TEST(product_oracle, plus_branch_plane_maxima) {
    SearchConfig cfg;
    cfg.restarts = 24;
    const auto maxima = product_plane_maxima(plus_branch_density(), 3, cfg);
    ASSERT_GE(maxima.size(), 2u);
    ASSERT_NEAR(maxima[0].fidelity, maxima[1].fidelity, 1e-9);
    for (int i = 0; i < 2; ++i) {
        ASSERT_NEAR(std::abs(maxima[i].a), 0.725398, 1e-3);
        ASSERT_NEAR(maxima[i].b, maxima[i].a, 1e-3);
    }
    ASSERT_NEAR(maxima[0].a, -maxima[1].a, 1e-3);
}

TEST(product_oracle, deterministic_and_monotone) {
    const auto rho = bd_to_density(random_bd(77));
    SearchConfig cfg;
    cfg.restarts = 6;
    const auto a = max_fidelity_over_products(rho, cfg);
    const auto b = max_fidelity_over_products(rho, cfg);
    ASSERT_EQ(a.best_value, b.best_value);
    ASSERT_EQ(a.argmax, b.argmax);
    ASSERT_EQ(a.evaluations, b.evaluations);
    ASSERT_EQ(a.restart_best, b.restart_best);
    for (std::size_t i = 1; i < a.restart_best.size(); ++i) {
        ASSERT_GE(a.restart_best[i], a.restart_best[i - 1]);
    }
}

TEST(product_oracle, candidates_never_beat_closed_form) {
    // Every argmax is a feasible product state, so its distance is an upper bound.
    SearchConfig cfg;
    cfg.restarts = 4;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = random_bd(seed);
        const auto r = max_fidelity_over_products(bd_to_density(s), cfg);
        const double f = uhlmann_fidelity(bd_to_density(s), product_to_density(product_from_params(r.argmax)));
        ASSERT_NEAR(f, r.best_value, 1e-12);
        ASSERT_GE(bures_from_fidelity(f), total_correlations(s) - 1e-9);
    }
}

TEST(cq_oracle, examples) {
    SearchConfig cfg;
    // Product states are classical-quantum.
    Rng rng(12);
    for (int t = 0; t < 5; ++t) {
        const auto p = product_to_density(ProductState(rng.in_unit_ball(), rng.in_unit_ball()));
        ASSERT_NEAR(max_fidelity_over_cq(p, cfg).best_value, 1.0, 1e-8);
    }
    ASSERT_NEAR(max_fidelity_over_cq(bd_to_density(bd_from_c(1, -1, 1)), cfg).best_value, 0.5, 1e-9);
    ASSERT_NEAR(max_fidelity_over_cq(bd_to_density(bd_from_c(0, 0, 0.7)), cfg).best_value, 1.0, 1e-9);
}

TEST(cq_oracle, agrees_with_closed_form) {
    SearchConfig cfg;
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const auto s = random_bd(derive_seed(5, seed));
        const auto r = max_fidelity_over_cq(bd_to_density(s), cfg);
        ASSERT_NEAR(r.best_value, closest_cq_fidelity(s), 1e-6) << seed;
        ASSERT_GE(bures_from_fidelity(r.best_value), quantum_correlations(s) - 1e-9);
    }
}

TEST(cq_oracle, dominates_product_oracle) {
    SearchConfig cfg;
    cfg.restarts = 6;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto rho = bd_to_density(random_bd(derive_seed(6, seed)));
        const auto p = max_fidelity_over_products(rho, cfg);
        const auto c = max_fidelity_over_cq(rho, cfg, {cq_params_from_product(product_from_params(p.argmax))});
        ASSERT_LE(p.best_value, c.best_value + 1e-9);
    }
}

TEST(classical_oracle, reference_fidelity) {
    // At r = a = b = 0 both distributions are known in closed form.
    for (double s : {0.0, 0.3, 0.6, 1.0}) {
        const double expected = 0.25 * std::pow(std::sqrt(1 + s) + std::sqrt(1 - s), 2);
        ASSERT_NEAR(reference_product_fidelity(s, 0, 0, 0), expected, 1e-14);
    }
    ASSERT_NEAR(reference_product_fidelity(0, 0, 0, 0), 1.0, 1e-15);
}

TEST(classical_oracle, optimum_at_origin) {
    SearchConfig cfg;
    for (double s : {1.0, 0.6, 0.8, 0.0}) {
        const auto r = classical_oracle(s, cfg);
        const double expected = 0.25 * std::pow(std::sqrt(1 + s) + std::sqrt(1 - s), 2);
        ASSERT_NEAR(r.best_value, expected, 1e-9) << s;
        for (double v : r.argmax) ASSERT_NEAR(v, 0.0, 1e-6) << s;
    }
    ASSERT_NEAR(classical_oracle(0.0, cfg).best_value, 1.0, 1e-15);
}

TEST(classical_oracle, degenerate_line_at_full_correlation) {
    // At s = 1 every point with a = b and r = 0 ties with the origin.
    for (double a : {0.2, 0.5, 0.9}) {
        ASSERT_NEAR(reference_product_fidelity(1, 0, a, a), reference_product_fidelity(1, 0, 0, 0), 1e-12);
    }
}

TEST(classical_oracle, matches_square_root_expansion) {
    // Sum of square roots of eigenvalue products, with the |01> weight of the
    // reference state written as (1 - r); this is the r -> -r image of the
    // convention used by cq_reference_density, so the maxima agree.
    const auto root = [](double s, double r, double a, double b) {
        return 0.25 * (std::sqrt((1 + a) * (1 - b) * (1 - r) * (1 - s)) + std::sqrt((1 - a) * (1 + b) * (1 + r) * (1 - s)) +
                       std::sqrt((1 - a) * (1 - b) * (1 + s)) + std::sqrt((1 + a) * (1 + b) * (1 + s)));
    };
    Rng rng(14);
    for (int t = 0; t < 500; ++t) {
        const double s = rng.uniform(-1, 1), r = rng.uniform(-1, 1), a = rng.uniform(-1, 1), b = rng.uniform(-1, 1);
        ASSERT_NEAR(reference_product_fidelity(s, r, a, b), std::pow(root(s, -r, a, b), 2), 1e-14);
    }
}

TEST(classical_oracle, from_state) {
    SearchConfig cfg;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = random_bd(seed);
        ASSERT_NEAR(classical_oracle(s, cfg).best_value, classical_correlation_fidelity(s), 1e-9);
    }
}

TEST(separable_bound, examples) {
    SearchConfig cfg;
    ASSERT_LE(separable_upper_bound(bd_to_density(bd_from_c(1.0 / 3, -1.0 / 3, 1.0 / 3)), 4, cfg).best_value, 1e-4);
    const auto bell = separable_upper_bound(bd_to_density(bd_from_c(1, -1, 1)), 4, cfg).best_value;
    ASSERT_NEAR(bell, kBellValue, 1e-3);
    ASSERT_GE(bell, kBellValue - 1e-9);
    const auto w = separable_upper_bound(bd_to_density(bd_from_c(0.5, -0.5, 0.5)), 4, cfg).best_value;
    const double e = entanglement(bd_from_c(0.5, -0.5, 0.5));
    ASSERT_GE(w, e - 1e-9);
    ASSERT_LE(w, e + 1e-3);
}

TEST(separable_bound, candidate_is_a_state) {
    Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        Params x(4 * 5);
        for (double &v : x) v = rng.uniform(-3, 3);
        const Matrix4 m = separable_from_params(x, 4);
        ASSERT_NEAR(m.trace().real(), 1.0, 1e-12);
        ASSERT_GE(hermitian_eigenvalues(m)[0], -1e-12);
    }
}

TEST(verify, small_batches) {
    SearchConfig cfg;
    auto v = verify_product_ansatz(20, cfg, 2);
    ASSERT_EQ(v.violations, 0u);
    ASSERT_LE(v.max_gap, 1e-6);
    ASSERT_EQ(v.samples, 20u);

    v = verify_product_ansatz(100, cfg, 4, SampleFamily::Rank2);
    ASSERT_EQ(v.violations, 0u);

    v = verify_cq(10, cfg, 2);
    ASSERT_EQ(v.violations, 0u);
    ASSERT_LT(v.max_gap, 1e-6);

    v = verify_classical(20, cfg, 2);
    ASSERT_EQ(v.violations, 0u);
}

TEST(verify, independent_of_thread_count) {
    SearchConfig cfg;
    cfg.restarts = 4;
    const auto a = verify_product_ansatz(12, cfg, 1);
    const auto b = verify_product_ansatz(12, cfg, 5);
    ASSERT_EQ(a.max_gap, b.max_gap);
    ASSERT_EQ(a.violations, b.violations);
}

TEST(verify, rank2_family) {
    for (std::size_t i = 0; i < 50; ++i) {
        const auto ev = bd_eigenvalues(batch_sample(3, i, SampleFamily::Rank2));
        ASSERT_NEAR(ev.gamma, 0.0, 1e-15);
        ASSERT_NEAR(ev.delta, 0.0, 1e-15);
        ASSERT_LE(ev.alpha, ev.beta + 1e-15);
    }
}
