#pragma once

#include <string>
#include <utility>
#include <vector>

#include "oscint/expansion.hpp"
#include "oscint/mellin.hpp"
#include "oscint/num.hpp"
#include "oscint/rat.hpp"

namespace oscint {

// One term c |tau|^{-r} ln^m |tau| of the large-frequency behavior.
struct OscTerm {
    Rat r;
    int m = 0;
    Complex c{0.0, 0.0};
};

struct OscillatoryExpansion {
    int direction = +1;  // sign of tau these terms describe
    std::vector<OscTerm> terms;

    void canonicalize();  // merge duplicate (r, m), drop exact zeros, sort
    bool empty() const { return terms.empty(); }
    Complex eval(double tau) const;  // uses |tau|; the sign must match direction
    Rat min_decay() const;           // smallest r present, 0 when empty
    std::string str() const;
};

// Principal parts of the normalized bracket
//     F(lambda) = int_0^s0 (s/s0)^lambda phi(s) ds/s
//                 - e^{-i pi lambda} int_0^s0 (s/s0)^lambda phi(-s) ds/s
// assembled in closed form from a declared expansion. A pole of order m at
// -r pairs with top log power m-1 at exponent r; include_prefactor divides
// by i pi to land on the transform itself instead of the bracket.
PoleTable poles_from_expansion(const AsymptoticExpansion& expansion, const ExponentLattice& lattice,
                               double s0 = 1.0, bool include_prefactor = false);

// Dictionary from profile terms to decay terms: a positive-side term
// c t^r ln^j t contributes c (d/dr)^j [G(r) |tau|^{-r}] with
// G(r) = Gamma(r) e^{+i pi r/2} as tau -> +inf, and the negative side enters
// with a minus sign and the opposite phase; direction = -1 swaps the phases.
// Log powers above 2 are not supported (phase-derivative order limit).
OscillatoryExpansion oscillatory_from_expansion(const AsymptoticExpansion& expansion, int direction);

// I(tau) = int_{-s0}^{s0} e^{i tau s} J(s) ds for the density J carried by
// phi(s) = s J(s); oscillation-aware panels, graded into the endpoint
// singularity at s = 0. Throws AccuracyError when the panels fail to settle.
Complex oscillatory_eval(const TwoSidedFunction& phi, double tau, double rel_tol = 1e-8);

struct OscFitReport {
    double condition = 0.0;
    double rms_residual = 0.0;
    int rows_used = 0;
};

// Least squares of sampled values I(tau_i) against the given (r, m) basis
// evaluated at |tau|^{-r} ln^m |tau|. SVD with a condition guard.
OscillatoryExpansion fit_oscillatory(const std::vector<double>& taus,
                                     const std::vector<Complex>& values,
                                     const std::vector<std::pair<Rat, int>>& basis, int direction,
                                     double cond_limit = 1e12, OscFitReport* report = nullptr);

// (r, m) pairs present in an expansion, ready to feed the fitter.
std::vector<std::pair<Rat, int>> basis_of(const OscillatoryExpansion& expansion);

}  // namespace oscint
