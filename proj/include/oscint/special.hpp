#pragma once

#include "oscint/num.hpp"

namespace oscint {

// digamma / trigamma for real x > 0 (recurrence + asymptotic series)
double digamma(double x);
double trigamma(double x);

// G(r) = Gamma(r) * exp(+i pi r / 2) and d^m/dr^m G(r), m <= 2, r > 0.
// sign = +1 gives the tau -> +inf phase factor for the s > 0 side,
// sign = -1 its conjugate counterpart.
Complex gamma_phase(double r, int sign);
Complex gamma_phase_derivative(double r, int sign, int m);

}  // namespace oscint
