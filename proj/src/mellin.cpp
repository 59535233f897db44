#include "oscint/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "oscint/errors.hpp"
#include "oscint/quad.hpp"

namespace oscint {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex cpow(double base, const Complex& e) {
    // base > 0
    return std::exp(e * std::log(base));
}

// e^{i pi r}, exact at integers so that two-sided integer cancellations are
// bitwise clean
Complex exp_ipi(const Rat& r) {
    if (r.is_integer()) return (r.num() % 2 == 0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
    double th = M_PI * r.to_double();
    return {std::cos(th), std::sin(th)};
}

Complex polyval(const std::vector<Complex>& p, const Complex& x) {
    Complex acc{0.0, 0.0};
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// coefficients of p(xi + a)
std::vector<Complex> poly_shift(const std::vector<Complex>& p, const Complex& a) {
    std::vector<Complex> out(p.size(), Complex(0.0, 0.0));
    for (std::size_t j = 0; j < p.size(); ++j) {
        // distribute p_j (xi + a)^j; row[m] = binom(j, m) a^{j-m}
        double binom = 1.0;
        Complex apow{1.0, 0.0};
        std::vector<Complex> row(j + 1);
        for (std::size_t t = 0; t <= j; ++t) {
            row[j - t] = binom * apow;
            apow *= a;
            binom = binom * static_cast<double>(j - t) / static_cast<double>(t + 1);
        }
        for (std::size_t m = 0; m <= j; ++m) out[m] += p[j] * row[m];
    }
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double binom_coeff(int n, int k) {
    double b = 1.0;
    for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
    return b;
}

// normalized log-basis coefficients: phi(sigma s0 x) = sum_j B_j x^r ln^j x
struct SideBlocks {
    std::map<int, Complex> B;  // j -> coefficient
    int jmax = -1;
};

struct RBlocks {
    SideBlocks pos, neg;
};

std::map<Rat, RBlocks> normalized_blocks(const AsymptoticExpansion& expansion, double s0) {
    std::map<Rat, RBlocks> blocks;
    const double L = std::log(s0);
    auto fold = [&](const std::vector<ExpTerm>& terms, bool positive) {
        for (const auto& t : terms) {
            double s0r = std::pow(s0, t.r.to_double());
            SideBlocks& side = positive ? blocks[t.r].pos : blocks[t.r].neg;
            for (int jp = 0; jp <= t.j; ++jp) {
                Complex add = t.c * s0r * binom_coeff(t.j, jp) * std::pow(L, t.j - jp);
                side.B[jp] += add;
            }
            side.jmax = std::max(side.jmax, t.j);
        }
    };
    fold(expansion.pos, true);
    fold(expansion.neg, false);
    return blocks;
}

}  // namespace

TwoSidedFunction TwoSidedFunction::from_callables(double s0, std::function<Complex(double)> pos,
                                                  std::function<Complex(double)> neg) {
    TwoSidedFunction f;
    f.s0 = s0;
    f.pos = std::move(pos);
    f.neg = std::move(neg);
    return f;
}

Complex mellin_eval(const TwoSidedFunction& phi, Complex lambda, double rel_tol) {
    if (lambda.real() <= 0.0) throw DomainError("mellin_eval requires Re lambda > 0");
    if (!phi.pos || !phi.neg) throw DomainError("mellin_eval requires both evaluators");
    auto side = [&](const std::function<Complex(double)>& f) {
        Integrand h = [&](double t) { return cpow(t, lambda) * f(t) / t; };
        QuadResult q = integrate_graded(h, phi.s0, lambda.real(), 0.0, rel_tol);
        if (!q.converged) throw AccuracyError("mellin_eval quadrature did not converge", q.error);
        return q.value;
    };
    Complex plus = side(phi.pos);
    Complex minus = side(phi.neg);
    Complex bracket = plus - std::exp(-kI * M_PI * lambda) * minus;
    return bracket / (kI * M_PI);
}

PoleTable principal_parts_from_expansion(const AsymptoticExpansion& expansion,
                                         const ExponentLattice& lattice, double s0,
                                         bool include_prefactor) {
    AsymptoticExpansion exp_c = expansion;
    exp_c.canonicalize();
    for (const auto* side : {&exp_c.pos, &exp_c.neg}) {
        for (const auto& t : *side) {
            if (!lattice.contains_coset(t.r.frac()))
                throw LatticeMismatch("expansion exponent " + t.r.str() + " outside candidate cosets");
            if (t.r > lattice.max_exponent())
                throw LatticeMismatch("expansion exponent " + t.r.str() + " beyond nu_max window");
            if (t.j > lattice.max_log_power)
                throw LatticeMismatch("log power " + std::to_string(t.j) + " beyond lattice bound");
        }
    }

    PoleTable table;
    table.s0 = s0;
    table.prefactor_included = include_prefactor;
    const Complex pref = include_prefactor ? 1.0 / (kI * M_PI) : Complex(1.0, 0.0);

    for (const auto& [r, blk] : normalized_blocks(exp_c, s0)) {
        int jmax = std::max(blk.pos.jmax, blk.neg.jmax);
        if (jmax < 0) continue;
        Complex eipr = exp_ipi(r);
        Pole pole;
        pole.location = -r;
        pole.principal.assign(jmax + 1, Complex(0.0, 0.0));
        for (int l = 1; l <= jmax + 1; ++l) {
            Complex p{0.0, 0.0};
            auto itp = blk.pos.B.find(l - 1);
            if (itp != blk.pos.B.end())
                p += itp->second * ((l - 1) % 2 ? -1.0 : 1.0) * factorial(l - 1);
            for (const auto& [j, Bj] : blk.neg.B) {
                if (j < l - 1) continue;
                Complex mip{0.0, -M_PI};  // -i pi
                Complex tail = std::pow(mip, j + 1 - l) / factorial(j + 1 - l);
                p -= eipr * Bj * (j % 2 ? -1.0 : 1.0) * factorial(j) * tail;
            }
            pole.principal[l - 1] = pref * p;
        }
        pole.order = jmax + 1;
        table.poles.push_back(std::move(pole));
    }
    // strictly zero tails trimmed so absent poles never appear
    table.apply_threshold(0.0, true);
    return table;
}

namespace {

void certify_expansion(const TwoSidedFunction& phi, const ContinueOptions& opts) {
    if (!phi.pos || !phi.neg) return;
    double hi = phi.expansion_valid_to > 0.0 ? std::min(phi.expansion_valid_to, phi.s0) : 0.5 * phi.s0;
    double lo = std::max(phi.eval_valid_from, hi * 1e-6);
    if (lo >= hi) return;  // no window where both sides are trusted
    double scale = 0.0;
    struct Sample {
        double t;
        Complex have, want;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < 12; ++i) {
        double t = hi * std::pow(lo / hi, i / 11.0);
        for (int side : {+1, -1}) {
            Complex have = side > 0 ? phi.pos(t) : phi.neg(t);
            Complex want = phi.expansion.eval_side(side, t);
            samples.push_back({t, have, want});
            scale = std::max(scale, std::max(std::abs(have), std::abs(want)));
        }
    }
    double worst = 0.0;
    for (const auto& s : samples) {
        double tol = 10.0 * phi.fit_residual + 1e-6 * std::max(std::abs(s.have), std::abs(s.want)) +
                     1e-12 * std::max(scale, 1.0);
        double gap = std::abs(s.have - s.want);
        if (gap > tol) worst = std::max(worst, gap - tol);
    }
    if (worst > 0.0)
        throw AccuracyError("declared expansion does not match the evaluators on the validation grid",
                            worst);
    (void)opts;
}

}  // namespace

PoleTable mellin_continue(const TwoSidedFunction& phi, const ExponentLattice& lattice,
                          const ContinueOptions& opts) {
    if (!phi.has_expansion && !phi.smooth_at_zero)
        throw NeedsExpansion("continuation requires a declared expansion (or smooth_at_zero)");
    if (opts.validate_expansion && phi.has_expansion) certify_expansion(phi, opts);
    AsymptoticExpansion expansion = phi.has_expansion ? phi.expansion : AsymptoticExpansion{};
    PoleTable table = principal_parts_from_expansion(expansion, lattice, phi.s0, opts.include_prefactor);
    table.apply_threshold(opts.zero_threshold, opts.threshold_absolute);
    return table;
}

Complex continued_bracket_eval(const TwoSidedFunction& phi, Complex lambda,
                               double remainder_exponent, double rel_tol) {
    if (!phi.pos || !phi.neg) throw DomainError("continued_bracket_eval requires evaluators");
    const double s0 = phi.s0;
    Complex closed{0.0, 0.0};
    Complex e_neg = std::exp(-kI * M_PI * lambda);
    for (const auto& [r, blk] : normalized_blocks(phi.expansion, s0)) {
        Complex mu = lambda + Complex(r.to_double(), 0.0);
        for (const auto& [j, Bj] : blk.pos.B)
            closed += Bj * (j % 2 ? -1.0 : 1.0) * factorial(j) / std::pow(mu, j + 1);
        for (const auto& [j, Bj] : blk.neg.B)
            closed -= e_neg * Bj * (j % 2 ? -1.0 : 1.0) * factorial(j) / std::pow(mu, j + 1);
    }
    const double cut = std::max(phi.eval_valid_from, 0.0);
    // when the declared expansion matches the evaluators to rounding the
    // remainder integrand is scale-free dust, so anchor the absolute
    // tolerance to the magnitude of the data instead of a fixed floor
    double scale = std::abs(closed);
    for (double t : {0.9 * s0, 0.5 * s0, 0.1 * s0})
        if (t > cut) scale = std::max({scale, std::abs(phi.pos(t)), std::abs(phi.neg(t))});
    const double abs_tol = std::max(1e-14, 0.1 * rel_tol * scale);
    auto remainder_integral = [&](int side) {
        Integrand h = [&, side](double t) -> Complex {
            if (t < cut) return {0.0, 0.0};
            Complex val = side > 0 ? phi.pos(t) : phi.neg(t);
            Complex expv = phi.expansion.eval_side(side, t);
            return cpow(t / s0, lambda) * (val - expv) / t;
        };
        double min_exp = lambda.real() + remainder_exponent;
        if (min_exp <= 0.01)
            throw DomainError("remainder integral not absolutely convergent at this lambda");
        QuadResult q = integrate_graded(h, s0, min_exp, abs_tol, rel_tol);
        if (!q.converged)
            throw AccuracyError("remainder quadrature did not converge", q.error);
        return q.value;
    };
    Complex rem = remainder_integral(+1) - e_neg * remainder_integral(-1);
    return closed + rem;
}

std::vector<Complex> principal_part_numeric(const TwoSidedFunction& phi, const Rat& r,
                                            double remainder_exponent, double circle_radius,
                                            int max_order, int n_points) {
    const Complex center(-r.to_double(), 0.0);
    std::vector<Complex> values(n_points);
    for (int m = 0; m < n_points; ++m) {
        double th = 2.0 * M_PI * m / n_points;
        Complex lam = center + circle_radius * Complex(std::cos(th), std::sin(th));
        values[m] = continued_bracket_eval(phi, lam, remainder_exponent);
    }
    std::vector<Complex> out(max_order, Complex(0.0, 0.0));
    for (int l = 1; l <= max_order; ++l) {
        KahanC acc;
        for (int m = 0; m < n_points; ++m) {
            double th = 2.0 * M_PI * m / n_points;
            acc.add(values[m] * Complex(std::cos(l * th), std::sin(l * th)));
        }
        out[l - 1] = acc.value() * std::pow(circle_radius, l) / static_cast<double>(n_points);
    }
    return out;
}

TwoSidedFunction lemma1_function(const std::vector<Complex>& P, const std::vector<Complex>& Q,
                                 const Rat& r, double s0) {
    if (!(r > Rat(0))) throw DomainError("lemma1_function requires r > 0");
    if (!(s0 > 0.0)) throw DomainError("lemma1_function requires s0 > 0");
    const double rd = r.to_double();
    const Complex eminus = [&] {
        if (r.is_integer()) return (r.num() % 2 == 0) ? Complex(1.0, 0.0) : Complex(-1.0, 0.0);
        return std::exp(Complex(0.0, -M_PI * rd));
    }();

    TwoSidedFunction f;
    f.s0 = s0;
    f.pos = [P, rd, s0](double t) {
        double x = t / s0;
        return std::pow(x, rd) * polyval(P, Complex(std::log(x), 0.0));
    };
    f.neg = [Q, rd, s0, eminus](double t) {
        double x = t / s0;
        return eminus * std::pow(x, rd) * polyval(Q, Complex(std::log(x), -M_PI));
    };

    const double L = std::log(s0);
    const double s0mr = std::pow(s0, -rd);
    std::vector<Complex> p_phys = poly_shift(P, Complex(-L, 0.0));
    std::vector<Complex> q_phys = poly_shift(Q, Complex(-L, -M_PI));
    for (std::size_t j = 0; j < p_phys.size(); ++j)
        if (p_phys[j] != Complex(0.0, 0.0)) f.expansion.add(+1, r, static_cast<int>(j), s0mr * p_phys[j]);
    for (std::size_t j = 0; j < q_phys.size(); ++j) {
        Complex c = eminus * s0mr * q_phys[j];
        if (c != Complex(0.0, 0.0)) f.expansion.add(-1, r, static_cast<int>(j), c);
    }
    f.expansion.canonicalize();
    f.has_expansion = true;
    f.expansion_valid_to = s0;
    return f;
}

Complex residue_lemma1(const std::vector<Complex>& P, const std::vector<Complex>& Q,
                       const Rat& r, double s0) {
    if (P.empty() || Q.empty()) throw DomainError("residue_lemma1 needs nonempty polynomials");
    TwoSidedFunction phi = lemma1_function(P, Q, r, s0);
    int deg = static_cast<int>(std::max(P.size(), Q.size())) - 1;
    ExponentLattice lattice =
        ExponentLattice::make({r.frac()}, static_cast<int>(r.floor()) + 1, deg);
    ContinueOptions opts;
    opts.zero_threshold = 0.0;
    opts.threshold_absolute = true;
    opts.include_prefactor = false;
    PoleTable table = mellin_continue(phi, lattice, opts);
    Complex residue = table.residue_at(-r);
    Complex direct = P[0] - Q[0];
    if (std::abs(residue - direct) > 1e-6)
        throw AccuracyError("continued residue disagrees with P(0) - Q(0)", std::abs(residue - direct));
    return direct;
}

}  // namespace oscint
