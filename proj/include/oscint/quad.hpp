#pragma once

#include <functional>

#include "oscint/num.hpp"

namespace oscint {

struct QuadResult {
    Complex value{0.0, 0.0};
    double error = 0.0;      // estimated absolute error
    int evaluations = 0;
    bool converged = false;
};

using Integrand = std::function<Complex(double)>;

// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects worst interval first.
QuadResult integrate_adaptive(const Integrand& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals = 2000);

// Integrates f over (0, b] where f may blow up like x^(p-1), p > 0, at 0.
// Geometric panels toward 0 (ratio 1/2) until the panel tail estimate drops
// below tolerance; each panel integrated adaptively. `min_exponent` is a
// lower bound on p used for the truncation-tail bound.
QuadResult integrate_graded(const Integrand& f, double b, double min_exponent,
                            double abs_tol, double rel_tol);

// Oscillatory-aware composite rule on [a, b]: panels no longer than half a
// period of exp(i tau s), each done with GK15, graded toward a when a == 0.
QuadResult integrate_oscillatory(const Integrand& f, double a, double b, double tau,
                                 double abs_tol, double rel_tol);

}  // namespace oscint
