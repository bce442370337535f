#include "bures/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "bures/errors.hpp"
#include "bures/fidelity.hpp"
#include "parallel.hpp"

namespace bures {

namespace {

constexpr int kMaxPolish = 6;
constexpr double kPolishStep = 0.02;
constexpr double kImprovement = 1e-15;

std::array<double, 3> clamp_ball(double x, double y, double z) {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (n > 1.0) {
        return {x / n, y / n, z / n};
    }
    return {x, y, z};
}

// Squared distance outside the unit ball. Subtracted from the objective so
// that clamped points are not a plateau the simplex can stall on.
double overshoot(const Params &x, std::size_t offset) {
    const double n = std::sqrt(x[offset] * x[offset] + x[offset + 1] * x[offset + 1] + x[offset + 2] * x[offset + 2]);
    return n > 1.0 ? (n - 1.0) * (n - 1.0) : 0.0;
}

std::array<double, 3> bloch_from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

// Maximizes `f` by multi-start Nelder-Mead with polishing. `draw` supplies
// starting points for restarts that have no seed.
OracleResult multi_start(const Objective &f, const SearchConfig &cfg, const std::vector<Params> &seeds,
                         const std::function<Params(Rng &)> &draw, double step) {
    if (cfg.restarts < 1 || !(cfg.xtol > 0.0) || !(cfg.ftol > 0.0)) {
        throw DomainError("search config needs restarts >= 1 and positive tolerances");
    }
    const Objective neg = [&](const Params &x) { return -f(x); };
    NelderMeadOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.xtol = cfg.xtol;
    opt.ftol = cfg.ftol;

    Rng rng(cfg.rng_seed);
    OracleResult out;
    out.best_value = -std::numeric_limits<double>::infinity();
    NelderMeadResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
        const auto ri = static_cast<std::size_t>(r);
        const Params x0 = ri < seeds.size() ? seeds[ri] : draw(rng);
        opt.initial_step = step;
        NelderMeadResult run = nelder_mead_minimize(neg, x0, opt);
        out.evaluations += run.evaluations;
        out.converged = out.converged || run.converged;
        if (r == 0 || run.value < best.value) {
            best = std::move(run);
        }
        out.best_value = -best.value;
        out.restart_best.push_back(out.best_value);
    }

    // Restart the simplex at the winner until it stops improving, in case it
    // collapsed before reaching the optimum.
    opt.initial_step = kPolishStep;
    for (int p = 0; p < kMaxPolish; ++p) {
        NelderMeadResult again = nelder_mead_minimize(neg, best.x, opt);
        out.evaluations += again.evaluations;
        const bool improved = again.value < best.value - kImprovement;
        if (again.value < best.value) {
            best = std::move(again);
        }
        if (!improved) {
            break;
        }
    }
    out.best_value = -best.value;
    out.argmax = best.x;
    if (!out.restart_best.empty()) {
        out.restart_best.back() = out.best_value;
    }
    return out;
}

// Replaces the penalized optimum by the plain objective at the clamped argmax.
void settle(OracleResult &out, double value) {
    out.best_value = value;
    out.restart_best.back() = std::max(out.restart_best.back(), value);
}

Params draw_product(Rng &rng) {
    const auto a = rng.in_unit_ball();
    const auto b = rng.in_unit_ball();
    return {a[0], a[1], a[2], b[0], b[1], b[2]};
}

SearchConfig sample_config(const SearchConfig &cfg, std::size_t index) {
    SearchConfig out = cfg;
    out.rng_seed = derive_seed(derive_seed(cfg.rng_seed, index), 1);
    return out;
}

}  // namespace

ProductState product_from_params(const Params &x) {
    return ProductState(clamp_ball(x[0], x[1], x[2]), clamp_ball(x[3], x[4], x[5]));
}

Params product_params(const ProductState &p) {
    return {p.a()[0], p.a()[1], p.a()[2], p.b()[0], p.b()[1], p.b()[2]};
}

OracleResult max_fidelity_over_products(const DensityMatrix &rho, const SearchConfig &cfg,
                                        const std::vector<Params> &seeds) {
    const FidelityKernel kernel(rho.matrix());
    const auto fidelity = [&](const Params &x) {
        return kernel(kron(qubit_from_bloch(clamp_ball(x[0], x[1], x[2])), qubit_from_bloch(clamp_ball(x[3], x[4], x[5]))));
    };
    const Objective f = [&](const Params &x) { return fidelity(x) - overshoot(x, 0) - overshoot(x, 3); };
    OracleResult out = multi_start(f, cfg, seeds, draw_product, 0.25);
    out.argmax = product_params(product_from_params(out.argmax));
    settle(out, fidelity(out.argmax));
    return out;
}

Matrix4 cq_from_params(const Params &x) {
    const auto n = bloch_from_angles(x[0], x[1]);
    const double p = std::sin(x[2]) * std::sin(x[2]);
    const Matrix2 plus = qubit_from_bloch(n);
    const Matrix2 minus = qubit_from_bloch({-n[0], -n[1], -n[2]});
    return kron(plus, qubit_from_bloch(clamp_ball(x[3], x[4], x[5]))) * cplx(p) +
           kron(minus, qubit_from_bloch(clamp_ball(x[6], x[7], x[8]))) * cplx(1.0 - p);
}

Params cq_params_from_product(const ProductState &p) {
    const auto &a = p.a();
    const auto &b = p.b();
    const double norm = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    double theta = 0.0, phi = 0.0;
    if (norm > 0.0) {
        theta = std::acos(std::clamp(a[2] / norm, -1.0, 1.0));
        phi = std::atan2(a[1], a[0]);
    }
    const double u = std::asin(std::sqrt(std::clamp(0.5 * (1.0 + norm), 0.0, 1.0)));
    return {theta, phi, u, b[0], b[1], b[2], b[0], b[1], b[2]};
}

OracleResult max_fidelity_over_cq(const DensityMatrix &rho, const SearchConfig &cfg, const std::vector<Params> &seeds) {
    const FidelityKernel kernel(rho.matrix());
    const Objective f = [&](const Params &x) { return kernel(cq_from_params(x)) - overshoot(x, 3) - overshoot(x, 6); };
    const auto draw = [](Rng &rng) {
        const auto b0 = rng.in_unit_ball();
        const auto b1 = rng.in_unit_ball();
        return Params{std::acos(rng.uniform(-1.0, 1.0)), rng.uniform(0.0, 2.0 * std::numbers::pi),
                      rng.uniform(0.0, 0.5 * std::numbers::pi), b0[0], b0[1], b0[2], b1[0], b1[1], b1[2]};
    };
    OracleResult out = multi_start(f, cfg, seeds, draw, 0.3);
    for (std::size_t offset : {std::size_t{3}, std::size_t{6}}) {
        const auto v = clamp_ball(out.argmax[offset], out.argmax[offset + 1], out.argmax[offset + 2]);
        std::copy(v.begin(), v.end(), out.argmax.begin() + static_cast<std::ptrdiff_t>(offset));
    }
    settle(out, kernel(cq_from_params(out.argmax)));
    return out;
}

std::vector<PlaneMaximum> product_plane_maxima(const DensityMatrix &rho, int l, const SearchConfig &cfg) {
    if (l < 1 || l > 3) {
        throw DomainError("axis index must be 1, 2 or 3");
    }
    const FidelityKernel kernel(rho.matrix());
    const auto axis = static_cast<std::size_t>(l - 1);
    const auto fidelity_at = [&](double a, double b) {
        std::array<double, 3> va{0.0, 0.0, 0.0}, vb{0.0, 0.0, 0.0};
        va[axis] = std::clamp(a, -1.0, 1.0);
        vb[axis] = std::clamp(b, -1.0, 1.0);
        return kernel(kron(qubit_from_bloch(va), qubit_from_bloch(vb)));
    };
    const Objective neg = [&](const Params &x) { return -fidelity_at(x[0], x[1]); };
    NelderMeadOptions opt;
    opt.max_iters = cfg.max_iters;
    opt.xtol = cfg.xtol;
    opt.ftol = cfg.ftol;
    opt.initial_step = 0.1;

    Rng rng(cfg.rng_seed);
    std::vector<PlaneMaximum> found;
    for (int r = 0; r < cfg.restarts; ++r) {
        const Params x0{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const NelderMeadResult run = nelder_mead_minimize(neg, x0, opt);
        const double a = std::clamp(run.x[0], -1.0, 1.0);
        const double b = std::clamp(run.x[1], -1.0, 1.0);
        const auto same = [&](const PlaneMaximum &m) { return std::hypot(m.a - a, m.b - b) < 1e-4; };
        const auto it = std::find_if(found.begin(), found.end(), same);
        if (it == found.end()) {
            found.push_back({a, b, -run.value});
        } else if (-run.value > it->fidelity) {
            *it = {a, b, -run.value};
        }
    }
    std::sort(found.begin(), found.end(),
              [](const PlaneMaximum &x, const PlaneMaximum &y) { return x.fidelity > y.fidelity; });
    return found;
}

double reference_product_fidelity(double s, double r, double a, double b) {
    const std::array<double, 4> product{
        0.25 * (1.0 + a) * (1.0 + b),
        0.25 * (1.0 + a) * (1.0 - b),
        0.25 * (1.0 - a) * (1.0 + b),
        0.25 * (1.0 - a) * (1.0 - b),
    };
    return classical_fidelity(cq_reference_diagonal({s, r}), product);
}

OracleResult classical_oracle(double s, const SearchConfig &cfg) {
    (void)cfg;
    if (!(std::abs(s) <= 1.0)) {
        throw DomainError("reference parameter s must lie in [-1, 1]");
    }
    constexpr int kGrid = 41;
    OracleResult out;
    std::array<double, 3> best{0.0, 0.0, 0.0};
    double best_f = reference_product_fidelity(s, 0.0, 0.0, 0.0);
    const double origin_f = best_f;
    out.evaluations = 1;
    const auto norm2 = [](const std::array<double, 3> &v) { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; };

    for (int i = 0; i < kGrid; ++i) {
        for (int j = 0; j < kGrid; ++j) {
            for (int k = 0; k < kGrid; ++k) {
                const std::array<double, 3> p{-1.0 + 2.0 * i / (kGrid - 1), -1.0 + 2.0 * j / (kGrid - 1),
                                              -1.0 + 2.0 * k / (kGrid - 1)};
                const double f = reference_product_fidelity(s, p[0], p[1], p[2]);
                ++out.evaluations;
                if (f > best_f + kImprovement || (f >= best_f - kImprovement && norm2(p) < norm2(best))) {
                    best_f = std::max(f, best_f);
                    best = p;
                }
            }
        }
    }

    // Compass search: move only on strict improvement.
    for (double h = 2.0 / (kGrid - 1); h > 1e-10;) {
        bool moved = false;
        for (int axis = 0; axis < 3 && !moved; ++axis) {
            for (double dir : {1.0, -1.0}) {
                std::array<double, 3> p = best;
                p[static_cast<std::size_t>(axis)] = std::clamp(p[static_cast<std::size_t>(axis)] + dir * h, -1.0, 1.0);
                const double f = reference_product_fidelity(s, p[0], p[1], p[2]);
                ++out.evaluations;
                if (f > best_f + kImprovement) {
                    best_f = f;
                    best = p;
                    moved = true;
                    break;
                }
            }
        }
        if (!moved) {
            h *= 0.5;
        }
    }

    if (best_f > origin_f + kClassicalTolerance) {
        throw AnsatzViolation("classical oracle: (r, a, b) = (" + std::to_string(best[0]) + ", " +
                              std::to_string(best[1]) + ", " + std::to_string(best[2]) + ") gives " +
                              std::to_string(best_f) + " > " + std::to_string(origin_f) + " at the origin");
    }
    out.best_value = best_f;
    out.argmax = {best[0], best[1], best[2]};
    out.converged = true;
    out.restart_best = {best_f};
    return out;
}

OracleResult classical_oracle(const BellDiagonalState &state, const SearchConfig &cfg) {
    return classical_oracle(std::abs(closest_cq(state).s_k), cfg);
}

Matrix4 separable_from_params(const Params &x, int n_terms) {
    const auto n = static_cast<std::size_t>(n_terms);
    const double top = *std::max_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
    std::vector<double> w(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = std::exp(x[i] - top);
        total += w[i];
    }
    Matrix4 out;
    for (std::size_t i = 0; i < n; ++i) {
        const double *angles = x.data() + n + 4 * i;
        const Matrix4 term = kron(qubit_from_bloch(bloch_from_angles(angles[0], angles[1])),
                                  qubit_from_bloch(bloch_from_angles(angles[2], angles[3])));
        out = out + term * cplx(w[i] / total);
    }
    return out;
}

OracleResult separable_upper_bound(const DensityMatrix &rho, int n_terms, const SearchConfig &cfg) {
    if (n_terms < 1) {
        throw DomainError("separable_upper_bound needs at least one term");
    }
    const FidelityKernel kernel(rho.matrix());
    const Objective f = [&](const Params &x) { return kernel(separable_from_params(x, n_terms)); };
    const auto draw = [n_terms](Rng &rng) {
        Params x;
        for (int i = 0; i < n_terms; ++i) {
            x.push_back(0.5 * rng.normal());
        }
        for (int i = 0; i < n_terms; ++i) {
            for (int q = 0; q < 2; ++q) {
                x.push_back(std::acos(rng.uniform(-1.0, 1.0)));
                x.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
            }
        }
        return x;
    };
    OracleResult out = multi_start(f, cfg, {}, draw, 0.4);
    out.best_value = bures_from_fidelity(out.best_value);
    for (double &v : out.restart_best) {
        v = bures_from_fidelity(v);
    }
    return out;
}

BellDiagonalState batch_sample(std::uint64_t seed, std::size_t index, SampleFamily family) {
    Rng rng(derive_seed(seed, index));
    if (family == SampleFamily::Rank2) {
        const double c = rng.uniform();
        return bd_from_eigenvalues({0.5 * (1.0 - c), 0.5 * (1.0 + c), 0.0, 0.0});
    }
    return random_bd(rng);
}

VerifySummary verify_product_ansatz(std::size_t n_samples, const SearchConfig &cfg, unsigned threads,
                                    SampleFamily family) {
    std::vector<double> gaps(n_samples);
    detail::parallel_for(n_samples, threads, [&](std::size_t i) {
        const BellDiagonalState state = batch_sample(cfg.rng_seed, i, family);
        const double closed = closest_product(state).fidelity;
        const double numeric = max_fidelity_over_products(bd_to_density(state), sample_config(cfg, i)).best_value;
        gaps[i] = numeric - closed;
    });
    VerifySummary out{"product", n_samples, 0, -std::numeric_limits<double>::infinity()};
    for (double g : gaps) {
        out.violations += g > kOracleTolerance ? 1 : 0;
        out.max_gap = std::max(out.max_gap, g);
    }
    return out;
}

VerifySummary verify_cq(std::size_t n_samples, const SearchConfig &cfg, unsigned threads) {
    std::vector<double> gaps(n_samples);
    detail::parallel_for(n_samples, threads, [&](std::size_t i) {
        const BellDiagonalState state = batch_sample(cfg.rng_seed, i, SampleFamily::Uniform);
        const double closed = closest_cq_fidelity(state);
        const double numeric = max_fidelity_over_cq(bd_to_density(state), sample_config(cfg, i)).best_value;
        gaps[i] = std::abs(numeric - closed);
    });
    VerifySummary out{"cq", n_samples, 0, 0.0};
    for (double g : gaps) {
        out.violations += g > kOracleTolerance ? 1 : 0;
        out.max_gap = std::max(out.max_gap, g);
    }
    return out;
}

VerifySummary verify_classical(std::size_t n_samples, const SearchConfig &cfg, unsigned threads) {
    std::vector<double> gaps(n_samples);
    std::vector<char> failed(n_samples, 0);
    detail::parallel_for(n_samples, threads, [&](std::size_t i) {
        const BellDiagonalState state = batch_sample(cfg.rng_seed, i, SampleFamily::Uniform);
        try {
            const double numeric = classical_oracle(state, sample_config(cfg, i)).best_value;
            gaps[i] = std::abs(numeric - classical_correlation_fidelity(state));
        } catch (const AnsatzViolation &) {
            failed[i] = 1;
        }
    });
    VerifySummary out{"classical", n_samples, 0, 0.0};
    for (std::size_t i = 0; i < n_samples; ++i) {
        out.violations += (failed[i] != 0 || gaps[i] > kClassicalTolerance) ? 1 : 0;
        out.max_gap = std::max(out.max_gap, gaps[i]);
    }
    return out;
}

}  // namespace bures
