#pragma once

#include <functional>
#include <vector>

namespace bures {

using Params = std::vector<double>;
using Objective = std::function<double(const Params &)>;

struct NelderMeadOptions {
    int max_iters = 4000;
    double xtol = 1e-9;       // simplex diameter (max-norm) at convergence
    double ftol = 1e-13;      // spread of vertex values at convergence
    double initial_step = 0.25;
};

struct NelderMeadResult {
    Params x;
    double value = 0.0;
    int evaluations = 0;
    int iterations = 0;
    bool converged = false;
};

// Downhill simplex with dimension-adaptive coefficients
// (reflection 1, expansion 1 + 2/n, contraction 3/4 - 1/(2n), shrink 1 - 1/n).
NelderMeadResult nelder_mead_minimize(const Objective &f, const Params &x0, const NelderMeadOptions &opt);

}  // namespace bures
