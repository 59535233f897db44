#pragma once

#include <functional>
#include <vector>

#include "oscint/expansion.hpp"
#include "oscint/num.hpp"

namespace oscint {

// Function on [-s0, s0] - {0}, given by one evaluator per side; the negative
// evaluator takes t > 0 and returns phi(-t). An attached expansion (see
// expansion.hpp for the convention) enables meromorphic continuation.
struct TwoSidedFunction {
    double s0 = 1.0;
    std::function<Complex(double)> pos;  // phi(t),  t in (0, s0]
    std::function<Complex(double)> neg;  // phi(-t), t in (0, s0]

    bool has_expansion = false;
    AsymptoticExpansion expansion;
    // expansion is exact/validated for t <= expansion_valid_to;
    // evaluators are trusted for t >= eval_valid_from (0 = all the way down)
    double expansion_valid_to = 0.0;
    double eval_valid_from = 0.0;
    double fit_residual = 0.0;
    bool smooth_at_zero = false;

    static TwoSidedFunction from_callables(double s0, std::function<Complex(double)> pos,
                                           std::function<Complex(double)> neg);
};

// M phi(lambda) = (1/(i pi)) [ int_0^s0 t^lambda phi(t) dt/t
//                              - e^{-i pi lambda} int_0^s0 t^lambda phi(-t) dt/t ],
// absolutely convergent for Re lambda > 0 (phi bounded).
Complex mellin_eval(const TwoSidedFunction& phi, Complex lambda, double rel_tol = 1e-10);

struct ContinueOptions {
    double zero_threshold = 1e-4;
    bool threshold_absolute = false;
    bool include_prefactor = true;
    double rel_tol = 1e-9;
    bool validate_expansion = true;
};

// Meromorphic continuation of the s0-normalized bracket
//     F(lambda) = int_0^s0 (t/s0)^lambda phi(t) dt/t
//                 - e^{-i pi lambda} int_0^s0 (t/s0)^lambda phi(-t) dt/t
// by analytic subtraction of the declared expansion on (0, s0]:
//     int_0^1 x^{lambda+r} ln^j x dx/x = (-1)^j j! / (lambda+r)^{j+1},
// negative side carrying the extra e^{-i pi lambda} expanded around each pole.
// Returns every pole with Re lambda >= -(nu_max + max coset).
PoleTable mellin_continue(const TwoSidedFunction& phi, const ExponentLattice& lattice,
                          const ContinueOptions& opts = {});

// Closed-form terms plus numerically integrated remainder; agrees with
// i*pi*mellin_eval on Re lambda > 0 and continues it meromorphically to the
// half-plane where the remainder stays integrable. remainder_exponent is a
// lower bound on the remainder's decay rate at 0.
Complex continued_bracket_eval(const TwoSidedFunction& phi, Complex lambda,
                               double remainder_exponent, double rel_tol = 1e-9);

// Laurent coefficients p_l, l = 1..max_order, of the continued bracket at
// lambda = -r, extracted by trapezoid contour integration on a circle of the
// given radius. Fully numeric: independent check of the assembled tables.
std::vector<Complex> principal_part_numeric(const TwoSidedFunction& phi, const Rat& r,
                                            double remainder_exponent, double circle_radius,
                                            int max_order, int n_points = 64);

// phi(s) = (s/s0)^r P[Log(s/s0)] for 0 < s < s0,
// phi(s) = (s/s0)^r Q[Log(s/s0)] for -s0 < s < 0,
// Log on the branch with argument in (-3pi/2, pi/2); polynomials given by
// ascending coefficient vectors.
TwoSidedFunction lemma1_function(const std::vector<Complex>& P, const std::vector<Complex>& Q,
                                 const Rat& r, double s0);

// Returns P(0) - Q(0), the residue of the bracket F at lambda = -r for the
// function above; before returning, the assembled continuation is
// cross-checked against that value to 1e-6 (throws AccuracyError otherwise).
Complex residue_lemma1(const std::vector<Complex>& P, const std::vector<Complex>& Q,
                       const Rat& r, double s0);

// Principal parts assembled in closed form from a declared expansion
// (physical-scale coefficients; s0 enters through the normalization).
PoleTable principal_parts_from_expansion(const AsymptoticExpansion& expansion,
                                         const ExponentLattice& lattice, double s0,
                                         bool include_prefactor);

}  // namespace oscint
