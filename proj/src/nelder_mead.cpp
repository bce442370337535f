#include "bures/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bures {

NelderMeadResult nelder_mead_minimize(const Objective &f, const Params &x0, const NelderMeadOptions &opt) {
    const std::size_t n = x0.size();
    const double dn = static_cast<double>(n);
    // The adaptive values reduce to the classic (1, 2, 1/2, 1/2) at n = 2; below that use the classic ones.
    const double rho = 1.0;
    const double chi = n >= 2 ? 1.0 + 2.0 / dn : 2.0;
    const double psi = n >= 2 ? 0.75 - 0.5 / dn : 0.5;
    const double sigma = n >= 2 ? 1.0 - 1.0 / dn : 0.5;

    NelderMeadResult out;
    std::vector<Params> simplex(n + 1, x0);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += opt.initial_step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        values[i] = f(simplex[i]);
    }
    out.evaluations = static_cast<int>(n + 1);

    std::vector<std::size_t> order(n + 1);
    Params centroid(n), xr(n), xe(n), xc(n);
    const auto eval = [&](const Params &x) {
        ++out.evaluations;
        return f(x);
    };

    for (out.iterations = 0; out.iterations < opt.max_iters; ++out.iterations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        {
            std::vector<Params> s2(n + 1);
            std::vector<double> v2(n + 1);
            for (std::size_t i = 0; i <= n; ++i) {
                s2[i] = simplex[order[i]];
                v2[i] = values[order[i]];
            }
            simplex.swap(s2);
            values.swap(v2);
        }

        double fspread = 0.0, xspread = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            fspread = std::max(fspread, std::abs(values[i] - values[0]));
            for (std::size_t j = 0; j < n; ++j) {
                xspread = std::max(xspread, std::abs(simplex[i][j] - simplex[0][j]));
            }
        }
        if (fspread <= opt.ftol && xspread <= opt.xtol) {
            out.converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                centroid[j] += simplex[i][j] / dn;
            }
        }
        const Params &worst = simplex[n];
        for (std::size_t j = 0; j < n; ++j) {
            xr[j] = centroid[j] + rho * (centroid[j] - worst[j]);
        }
        const double fr = eval(xr);

        if (fr < values[0]) {
            for (std::size_t j = 0; j < n; ++j) {
                xe[j] = centroid[j] + chi * (xr[j] - centroid[j]);
            }
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
            continue;
        }
        if (fr < values[n - 1]) {
            simplex[n] = xr;
            values[n] = fr;
            continue;
        }

        // Outside contraction if the reflected point beats the worst, inside otherwise.
        const bool outside = fr < values[n];
        for (std::size_t j = 0; j < n; ++j) {
            xc[j] = outside ? centroid[j] + psi * (xr[j] - centroid[j]) : centroid[j] + psi * (worst[j] - centroid[j]);
        }
        const double fc = eval(xc);
        if (fc < (outside ? fr : values[n])) {
            simplex[n] = xc;
            values[n] = fc;
            continue;
        }

        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                simplex[i][j] = simplex[0][j] + sigma * (simplex[i][j] - simplex[0][j]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    out.x = simplex[best];
    out.value = values[best];
    return out;
}

}  // namespace bures
