#include "oscint/special.hpp"

#include <cmath>

#include "oscint/errors.hpp"

namespace oscint {

double digamma(double x) {
    if (!(x > 0.0)) throw DomainError("digamma requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // asymptotic series with Bernoulli coefficients
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = std::log(x) - 0.5 * inv
             - inv2 * (1.0 / 12.0 - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 / 240.0)));
    return acc + s;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw DomainError("trigamma requires x > 0");
    double acc = 0.0;
    while (x < 8.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double s = inv * (1.0 + 0.5 * inv + inv2 * (1.0 / 6.0 - inv2 * (1.0 / 30.0 - inv2 * (1.0 / 42.0 - inv2 / 30.0))));
    return acc + s;
}

Complex gamma_phase(double r, int sign) {
    if (!(r > 0.0)) throw DomainError("gamma_phase requires r > 0");
    double g = std::tgamma(r);
    if (r == std::floor(r)) {
        // exact quarter-turn phases keep integer-exponent cancellations clean
        static const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
        int q = static_cast<int>(std::fmod(r, 4.0));
        if (sign < 0) q = (4 - q) % 4;
        return g * quarter[q % 4];
    }
    double th = 0.5 * M_PI * r * (sign >= 0 ? 1.0 : -1.0);
    return g * Complex(std::cos(th), std::sin(th));
}

Complex gamma_phase_derivative(double r, int sign, int m) {
    // d/dr [Gamma(r) e^{i a r}] = G * (psi(r) + i a), a = +-pi/2
    Complex g = gamma_phase(r, sign);
    if (m == 0) return g;
    Complex w(digamma(r), 0.5 * M_PI * (sign >= 0 ? 1.0 : -1.0));
    if (m == 1) return g * w;
    if (m == 2) return g * (w * w + trigamma(r));
    throw UnsupportedFamily("gamma_phase_derivative supports m <= 2");
}

}  // namespace oscint
