#include "oscint/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

#include "oscint/errors.hpp"
#include "oscint/quad.hpp"
#include "oscint/special.hpp"

namespace oscint {

void OscillatoryExpansion::canonicalize() {
    std::sort(terms.begin(), terms.end(), [](const OscTerm& a, const OscTerm& b) {
        return a.r < b.r || (a.r == b.r && a.m < b.m);
    });
    std::vector<OscTerm> merged;
    for (const auto& t : terms) {
        if (!merged.empty() && merged.back().r == t.r && merged.back().m == t.m)
            merged.back().c += t.c;
        else
            merged.push_back(t);
    }
    terms.clear();
    for (const auto& t : merged)
        if (t.c != Complex(0.0, 0.0)) terms.push_back(t);
}

Complex OscillatoryExpansion::eval(double tau) const {
    if (tau * direction <= 0.0) throw DomainError("tau sign does not match the expansion direction");
    double a = std::abs(tau);
    double la = std::log(a);
    Complex acc{0.0, 0.0};
    for (const auto& t : terms)
        acc += t.c * std::pow(a, -t.r.to_double()) * std::pow(la, t.m);
    return acc;
}

Rat OscillatoryExpansion::min_decay() const {
    if (terms.empty()) return Rat(0);
    Rat best = terms.front().r;
    for (const auto& t : terms) best = std::min(best, t.r);
    return best;
}

std::string OscillatoryExpansion::str() const {
    std::ostringstream out;
    out << (direction > 0 ? "tau -> +inf: " : "tau -> -inf: ");
    if (terms.empty()) {
        out << "0";
        return out.str();
    }
    bool first = true;
    for (const auto& t : terms) {
        if (!first) out << " + ";
        out << "(" << format_complex(t.c) << ") |tau|^-" << t.r.str();
        for (int i = 0; i < t.m; ++i) out << " ln|tau|";
        first = false;
    }
    return out.str();
}

PoleTable poles_from_expansion(const AsymptoticExpansion& expansion, const ExponentLattice& lattice,
                               double s0, bool include_prefactor) {
    return principal_parts_from_expansion(expansion, lattice, s0, include_prefactor);
}

OscillatoryExpansion oscillatory_from_expansion(const AsymptoticExpansion& expansion,
                                                int direction) {
    if (direction != +1 && direction != -1) throw DomainError("direction must be +1 or -1");
    OscillatoryExpansion out;
    out.direction = direction;
    auto fold = [&](const std::vector<ExpTerm>& terms, int side) {
        for (const auto& t : terms) {
            if (t.r <= Rat(0)) throw DomainError("non-integrable profile exponent");
            if (t.j > 2)
                throw UnsupportedFamily("profile log powers above 2 are not supported here");
            int phase_sign = side * direction;
            double pre = side > 0 ? 1.0 : -1.0;
            double binom = 1.0;
            for (int m = 0; m <= t.j; ++m) {
                Complex g = gamma_phase_derivative(t.r.to_double(), phase_sign, t.j - m);
                double sgn = m % 2 ? -1.0 : 1.0;
                out.terms.push_back({t.r, m, pre * t.c * binom * sgn * g});
                binom = binom * (t.j - m) / (m + 1.0);
            }
        }
    };
    fold(expansion.pos, +1);
    fold(expansion.neg, -1);
    out.canonicalize();
    return out;
}

Complex oscillatory_eval(const TwoSidedFunction& phi, double tau, double rel_tol) {
    if (tau == 0.0) throw DomainError("tau must be nonzero");
    if (!phi.pos || !phi.neg) throw DomainError("oscillatory_eval requires both evaluators");
    auto side = [&](int sigma) {
        Integrand h = [&, sigma](double t) -> Complex {
            Complex J = sigma > 0 ? phi.pos(t) / t : -phi.neg(t) / t;
            double arg = sigma * tau * t;
            return Complex(std::cos(arg), std::sin(arg)) * J;
        };
        QuadResult q = integrate_oscillatory(h, 0.0, phi.s0, tau, 0.0, rel_tol);
        if (!q.converged)
            throw AccuracyError("oscillatory quadrature did not settle", q.error);
        return q.value;
    };
    return side(+1) + side(-1);
}

OscillatoryExpansion fit_oscillatory(const std::vector<double>& taus,
                                     const std::vector<Complex>& values,
                                     const std::vector<std::pair<Rat, int>>& basis, int direction,
                                     double cond_limit, OscFitReport* report) {
    if (taus.size() != values.size()) throw DomainError("taus and values must align");
    if (basis.empty()) throw DomainError("empty fit basis");
    const int n = static_cast<int>(taus.size());
    const int mcol = static_cast<int>(basis.size());
    if (n < mcol)
        throw IllConditioned("fewer samples than basis functions",
                             std::numeric_limits<double>::infinity());
    Eigen::MatrixXd A(n, mcol);
    Eigen::VectorXd yr(n), yi(n);
    for (int i = 0; i < n; ++i) {
        if (taus[i] * direction <= 0.0) throw DomainError("tau sign does not match direction");
        double a = std::abs(taus[i]);
        double la = std::log(a);
        for (int c = 0; c < mcol; ++c)
            A(i, c) = std::pow(a, -basis[c].first.to_double()) * std::pow(la, basis[c].second);
        yr(i) = values[i].real();
        yi(i) = values[i].imag();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smin = svd.singularValues()(mcol - 1);
    double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                             : std::numeric_limits<double>::infinity();
    if (cond > cond_limit) throw IllConditioned("decay basis degenerate on these frequencies", cond);
    Eigen::VectorXd cr = svd.solve(yr), ci = svd.solve(yi);
    OscillatoryExpansion out;
    out.direction = direction;
    for (int c = 0; c < mcol; ++c)
        out.terms.push_back({basis[c].first, basis[c].second, Complex(cr(c), ci(c))});
    out.canonicalize();
    if (report) {
        report->condition = cond;
        Eigen::VectorXd rr = A * cr - yr, ri = A * ci - yi;
        report->rms_residual = std::sqrt((rr.squaredNorm() + ri.squaredNorm()) / n);
        report->rows_used = n;
    }
    return out;
}

std::vector<std::pair<Rat, int>> basis_of(const OscillatoryExpansion& expansion) {
    std::vector<std::pair<Rat, int>> out;
    for (const auto& t : expansion.terms) out.push_back({t.r, t.m});
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace oscint
