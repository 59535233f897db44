#include "oscint/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include "oscint/asympt.hpp"
#include "oscint/errors.hpp"
#include "oscint/fiber.hpp"
#include "oscint/mellin.hpp"
#include "oscint/milnor.hpp"
#include "oscint/model.hpp"
#include "oscint/quad.hpp"

namespace oscint {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double rng_uniform(std::uint64_t& state) { return (splitmix64(state) >> 11) * 0x1.0p-53; }

std::string monomial_phase_text(int k, int eps) {
    std::string t = eps > 0 ? "" : "-";
    return t + "x^" + std::to_string(k);
}

std::string monomial_density_text(int i) {
    if (i == 0) return "1";
    if (i == 1) return "x";
    return "x^" + std::to_string(i);
}

// drop fitted terms statistically indistinguishable from zero
AsymptoticExpansion prune_insignificant(const AsymptoticExpansion& e, double n_sigma) {
    AsymptoticExpansion out;
    for (const auto& t : e.pos)
        if (std::abs(t.c) > n_sigma * t.sigma) out.add(+1, t.r, t.j, t.c, t.sigma);
    for (const auto& t : e.neg)
        if (std::abs(t.c) > n_sigma * t.sigma) out.add(-1, t.r, t.j, t.c, t.sigma);
    out.canonicalize();
    return out;
}

struct DetectionCase {
    int k = 0, eps = 0;
    int a_pos = 0, a_neg = 0;
    std::set<Rat> detected, predicted;
    int max_order = 0;
    bool match = false;
};

std::vector<DetectionCase> run_detection_grid() {
    std::vector<DetectionCase> out;
    for (int k : {2, 3, 4, 5}) {
        for (int eps : {+1, -1}) {
            PhaseGerm phase = PhaseGerm::parse(monomial_phase_text(k, eps));
            ComponentSet cs = enumerate_components(phase, 1.0);
            for (int ap : {0, 1, -1}) {
                for (int an : {0, 1, -1}) {
                    DetectionCase dc;
                    dc.k = k;
                    dc.eps = eps;
                    dc.a_pos = ap;
                    dc.a_neg = an;

                    ExactRegion xr;
                    xr.coeffs = {{Rat(ap), Rat(0)}, {Rat(an), Rat(0)}};
                    for (const auto& [u, ord] : predict_pole_cosets(phase, cs, xr))
                        if (ord >= 1) dc.predicted.insert(u);

                    if (ap != 0 || an != 0) {
                        RegionCombination region;
                        region.coeffs = {Complex(ap, 0.0), Complex(an, 0.0)};
                        for (int i = 0; i < k; ++i) {
                            TestDensity g;
                            g.m = Poly::parse(monomial_density_text(i));
                            g.radius = 1.0;
                            TwoSidedFunction f = exact_two_sided_1d(phase, g, cs, region);
                            Rat r(i + 1, k);
                            ExponentLattice lat = ExponentLattice::make({r.frac()}, 1, 0);
                            ContinueOptions copts;
                            copts.zero_threshold = 1e-8;
                            copts.threshold_absolute = true;
                            copts.include_prefactor = false;
                            PoleTable table = mellin_continue(f, lat, copts);
                            dc.max_order = std::max(dc.max_order, table.max_order());
                            if (!table.poles.empty()) dc.detected.insert(r.frac());
                        }
                    }
                    dc.match = dc.detected == dc.predicted;
                    out.push_back(dc);
                }
            }
        }
    }
    return out;
}

PoleTable assemble_pruned(const FiberSamples& samples, const ExponentLattice& lattice,
                          double s_fit_max, double n_sigma) {
    FitOptions fopts;
    fopts.s_fit_max = s_fit_max;
    AsymptoticExpansion fit = fit_expansion(samples, lattice, fopts);
    AsymptoticExpansion kept = prune_insignificant(fit, n_sigma);
    PoleTable t = principal_parts_from_expansion(kept, lattice, samples.grid.upper_edge(), false);
    return t.to_unnormalized();
}

FiberSamples saddle_oracle_samples(const GridSpec& grid, const TestDensity& density) {
    // level-set density of x^2 - y^2 against a radial density: for s > 0 the
    // two branches x = +-sqrt(y^2 + s) give
    //     J(s) = 2 int_0^Y g(sqrt(y^2 + s), y) / sqrt(y^2 + s) dy,
    // with Y = sqrt((R^2 - s) / 2); s < 0 is the mirror image in x <-> y.
    FiberSamples out;
    out.grid = grid;
    out.meta = "{\"kind\":\"quadrature\"}";
    const double R = density.radius;
    for (int sigma : {+1, -1}) {
        for (int b = 0; b < grid.n_bins(); ++b) {
            double s = grid.center(b);
            FiberRow row;
            row.side = sigma;
            row.s = s;
            if (s < R * R) {
                double Y = std::sqrt((R * R - s) / 2.0);
                Integrand h = [&](double y) -> Complex {
                    double x = std::sqrt(y * y + s);
                    double gx = sigma > 0 ? x : y;
                    double gy = sigma > 0 ? y : x;
                    return Complex(density.eval(gx, gy) / x, 0.0);
                };
                QuadResult q = integrate_adaptive(h, 0.0, Y, 1e-13, 1e-11);
                row.J = 2.0 * q.value;
            }
            out.rows.push_back(row);
        }
    }
    return out;
}

// the 2d structure gate and the order bound must look at the same tables, so
// both criteria run their Monte Carlo pipelines through these two helpers
PoleTable paraboloid_table(const char* density, std::int64_t n, std::uint64_t seed) {
    PhaseGerm phase = PhaseGerm::parse("x^2+y^2");
    TestDensity g;
    g.m = Poly::parse(density);
    g.radius = 1.0;
    ComponentSet cs = enumerate_components(phase, 1.0);
    RegionCombination region;
    region.coeffs.assign(cs.size(), Complex(1.0, 0.0));
    GridSpec grid = default_grid(phase, g);
    SampleOptions sopts;
    sopts.n_samples = n;
    sopts.seed = seed;
    FiberSamples samples = sample_fiber_integral(phase, g, cs, region, grid, sopts);
    ExponentLattice lat = ExponentLattice::make({Rat(0)}, 2, 1);
    return assemble_pruned(samples, lat, 0.2, 5.0);
}

struct SaddlePair {
    PoleTable mc;
    PoleTable oracle;
};

// x^2 - y^2 needs a shallower grid than the paraboloid: the sampler reaches a
// bin s only through the thin wedge |cos 2theta| <= s / r^2, so bins far below
// 1e-4 are starved and their jackknife errors turn overconfident. Four decades
// keeps every bin in the well-sampled regime, and the fit window stops at 0.3
// where the cell average is still unbiased.
SaddlePair saddle_tables(std::int64_t n, std::uint64_t seed) {
    PhaseGerm phase = PhaseGerm::parse("x^2-y^2");
    TestDensity g;
    g.m = Poly::parse("1");
    g.radius = 1.0;
    ComponentSet cs = enumerate_components(phase, 1.0);
    RegionCombination region;
    region.coeffs.assign(cs.size(), Complex(1.0, 0.0));
    GridSpec grid = default_grid(phase, g, 4.0, 16);
    SampleOptions sopts;
    sopts.n_samples = n;
    sopts.seed = seed;
    FiberSamples samples = sample_fiber_integral(phase, g, cs, region, grid, sopts);
    ExponentLattice lat = ExponentLattice::make({Rat(0)}, 3, 1);
    return {assemble_pruned(samples, lat, 0.3, 5.0),
            assemble_pruned(saddle_oracle_samples(grid, g), lat, 0.3, 5.0)};
}

std::string set_str(const std::set<Rat>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& r : s) {
        if (!first) out += ",";
        out += r.str();
        first = false;
    }
    return out + "}";
}

}  // namespace

CriterionResult verify_lemma1() {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "lemma1";
    const std::vector<Rat> rs = {Rat(1, 3), Rat(1, 2), Rat(7, 10), Rat(1), Rat(3, 2)};
    std::uint64_t rng = 0x51a7e5u;
    double worst_contour = 0.0, worst_overlap = 0.0;
    int failures = 0;
    std::string first_failure;

    for (int case_i = 0; case_i < 50; ++case_i) {
        const Rat r = rs[case_i % rs.size()];
        auto rand_poly = [&rng](int deg) {
            std::vector<Complex> p(deg + 1);
            for (auto& c : p)
                c = Complex(2.0 * rng_uniform(rng) - 1.0, 2.0 * rng_uniform(rng) - 1.0);
            return p;
        };
        int dp = static_cast<int>(rng_uniform(rng) * 4.0) % 4;
        int dq = static_cast<int>(rng_uniform(rng) * 4.0) % 4;
        std::vector<Complex> P = rand_poly(dp), Q = rand_poly(dq);
        double s0 = 0.5 + rng_uniform(rng);
        Complex direct = P[0] - Q[0];
        try {
            // assembled continuation agrees with P(0) - Q(0) (checked inside)
            residue_lemma1(P, Q, r, s0);

            // independent contour extraction around lambda = -r
            TwoSidedFunction phi = lemma1_function(P, Q, r, s0);
            auto pp = principal_part_numeric(phi, r, r.to_double() + 1.0, 0.3,
                                             std::max(dp, dq) + 1, 32);
            double gap = std::abs(pp[0] - direct);
            worst_contour = std::max(worst_contour, gap);
            if (gap > 1e-6) throw AccuracyError("contour residue off", gap);

            // overlap with the convergent half-plane on a subset
            if (case_i % 5 == 0) {
                Complex lam(0.8, 0.3);
                Complex via_transform =
                    std::pow(Complex(s0, 0.0), -lam) * Complex(0.0, M_PI) * mellin_eval(phi, lam);
                Complex via_continuation = continued_bracket_eval(phi, lam, r.to_double() + 1.0);
                double ogap = std::abs(via_transform - via_continuation) /
                              std::max({1.0, std::abs(via_transform), std::abs(via_continuation)});
                worst_overlap = std::max(worst_overlap, ogap);
                if (ogap > 1e-6) throw AccuracyError("overlap identity off", ogap);
            }
        } catch (const Error& e) {
            ++failures;
            if (first_failure.empty())
                first_failure = "case " + std::to_string(case_i) + " (r=" + r.str() + "): " + e.what();
        }
    }

    res.seconds = elapsed_since(t0);
    res.pass = failures == 0 && res.seconds < 5.0;
    std::ostringstream d;
    d << "50 randomized cases; worst contour gap " << fmt(worst_contour) << ", worst overlap gap "
      << fmt(worst_overlap) << " (bound 1e-6)";
    if (failures) d << "; " << failures << " FAILED, first: " << first_failure;
    if (res.seconds >= 5.0) d << "; over the 5 s budget";
    res.details = d.str();
    return res;
}

CriterionResult verify_detection_1d() {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "detection-1d";
    std::vector<DetectionCase> cases = run_detection_grid();
    int mismatches = 0;
    std::string first_mismatch;
    for (const auto& dc : cases) {
        if (dc.match) continue;
        ++mismatches;
        if (first_mismatch.empty()) {
            std::ostringstream m;
            m << "k=" << dc.k << " eps=" << dc.eps << " region (" << dc.a_pos << "," << dc.a_neg
              << "): detected " << set_str(dc.detected) << " vs predicted " << set_str(dc.predicted);
            first_mismatch = m.str();
        }
    }
    res.seconds = elapsed_since(t0);
    res.pass = mismatches == 0 && res.seconds < 30.0;
    std::ostringstream d;
    d << cases.size() << " cases (k in {2,3,4,5}, both signs, 9 regions): ";
    if (mismatches == 0)
        d << "all detected coset sets equal the predicted ones";
    else
        d << mismatches << " mismatches, first: " << first_mismatch;
    if (res.seconds >= 30.0) d << "; over the 30 s budget";
    res.details = d.str();
    return res;
}

CriterionResult verify_pole_order() {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "pole-order";
    int worst_1d = 0, worst_2d = 0;

    // the bound covers the poles the other criteria detect, so this re-runs
    // their own pipelines: the 1d detection grid must stay at simple poles,
    // the 2d Monte Carlo tables (reduced sample count) may carry one log
    for (const auto& dc : run_detection_grid()) worst_1d = std::max(worst_1d, dc.max_order);

    for (const char* density : {"1", "1+x^2+y^2"})
        worst_2d = std::max(worst_2d, paraboloid_table(density, 4'000'000, 11).max_order());
    auto [mc, oracle] = saddle_tables(4'000'000, 11);
    worst_2d = std::max({worst_2d, mc.max_order(), oracle.max_order()});

    res.seconds = elapsed_since(t0);
    res.pass = worst_1d <= 1 && worst_2d <= 2;
    std::ostringstream d;
    d << "worst detected order: " << worst_1d << " in 1d (bound 1), " << worst_2d
      << " in 2d (bound 2)";
    res.details = d.str();
    return res;
}

CriterionResult verify_dictionary() {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "dictionary";
    double worst_rel_1e3 = 0.0, worst_rel_low = 0.0, worst_coef = 0.0;
    int failures = 0;
    std::string first_failure;

    struct Target {
        const char* phase;
        Complex leading;  // coefficient of the leading tau^{-r} term
        Rat r;
    };
    const double g13 = std::tgamma(1.0 / 3.0);
    const std::vector<Target> targets = {
        {"x^2", std::sqrt(M_PI) * Complex(std::cos(M_PI / 4), std::sin(M_PI / 4)), Rat(1, 2)},
        {"x^3", Complex(2.0 / 3.0 * g13 * std::cos(M_PI / 6), 0.0), Rat(1, 3)},
    };

    for (const auto& target : targets) {
        try {
            PhaseGerm phase = PhaseGerm::parse(target.phase);
            ComponentSet cs = enumerate_components(phase, 1.0);
            TestDensity g;
            g.m = Poly::parse("1");
            g.radius = 1.0;
            RegionCombination region;
            region.coeffs = {Complex(1.0, 0.0), Complex(1.0, 0.0)};
            TwoSidedFunction phi = exact_two_sided_1d(phase, g, cs, region);
            OscillatoryExpansion pred = oscillatory_from_expansion(phi.expansion, +1);

            Complex coef{0.0, 0.0};
            for (const auto& t : pred.terms)
                if (t.r == target.r && t.m == 0) coef = t.c;
            double cgap = std::abs(coef - target.leading) / std::abs(target.leading);
            worst_coef = std::max(worst_coef, cgap);
            if (cgap > 1e-10) throw AccuracyError("dictionary coefficient off", cgap);

            // subleading corrections are genuine at small tau, so the 1%
            // bound applies to the leading term at tau = 1e3 only; the
            // low-tau gaps are reported and must shrink as tau grows
            double prev_rel = std::numeric_limits<double>::infinity();
            for (double tau : {10.0, 100.0, 1000.0}) {
                Complex num = oscillatory_eval(phi, tau, 1e-9);
                Complex lead = coef * std::pow(tau, -target.r.to_double());
                double rel = std::abs(num - lead) / std::abs(lead);
                if (tau == 1000.0) {
                    worst_rel_1e3 = std::max(worst_rel_1e3, rel);
                    if (rel > 0.01) throw AccuracyError("leading-term mismatch at tau=1e3", rel);
                } else {
                    worst_rel_low = std::max(worst_rel_low, rel);
                }
                if (rel > prev_rel)
                    throw AccuracyError("leading-term gap grew with tau", rel);
                prev_rel = rel;
            }
        } catch (const Error& e) {
            ++failures;
            if (first_failure.empty()) first_failure = std::string(target.phase) + ": " + e.what();
        }
    }

    res.seconds = elapsed_since(t0);
    res.pass = failures == 0 && res.seconds < 60.0;
    std::ostringstream d;
    d << "closed-form coefficients matched to " << fmt(worst_coef) << "; numeric vs predicted "
      << fmt(worst_rel_1e3) << " rel at tau=1e3 (bound 0.01), " << fmt(worst_rel_low)
      << " at tau=10..100";
    if (failures) d << "; " << failures << " FAILED, first: " << first_failure;
    res.details = d.str();
    return res;
}

CriterionResult verify_mc_2d(std::int64_t n_samples) {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "mc-2d";
    std::ostringstream d;
    bool ok = true;

    // rotationally symmetric paraboloid: the level-area derivative is
    // pi (1 + s) m-weighted, so residues at -1 and -2 are known exactly
    for (const char* density : {"1", "1+x^2+y^2"}) {
        PoleTable table = paraboloid_table(density, n_samples, 2024);
        Complex r1 = table.residue_at(Rat(-1));
        double rel1 = std::abs(r1 - Complex(M_PI, 0.0)) / M_PI;
        bool simple = true;
        bool locations_ok = true;
        for (const auto& p : table.poles) {
            simple = simple && p.order == 1;
            locations_ok = locations_ok && (p.location == Rat(-1) || p.location == Rat(-2));
        }
        bool leading = table.find(Rat(-1)) != nullptr;
        d << "paraboloid m=" << density << ": residue(-1)=" << fmt(r1.real()) << " (pi to "
          << fmt(rel1) << " rel)";
        bool this_ok = rel1 <= 0.02 && simple && locations_ok && leading;
        if (std::string(density) != "1") {
            Complex r2 = table.residue_at(Rat(-2));
            double rel2 = std::abs(r2 - Complex(M_PI, 0.0)) / M_PI;
            d << ", residue(-2)=" << fmt(r2.real()) << " (pi to " << fmt(rel2) << " rel)";
            this_ok = this_ok && rel2 <= 0.10 && table.find(Rat(-2)) != nullptr;
        }
        if (!simple) d << " NOT SIMPLE";
        if (!locations_ok) d << " POLE OUTSIDE -1,-2";
        d << "; ";
        ok = ok && this_ok;
    }

    // saddle: the bracket kills the logarithm at -1 exactly (the two sides
    // carry opposite log coefficients and exp(i pi r) = -1 at odd r), so the
    // leading pole is simple with residue i pi g(0) and the genuine order-2
    // structure sits at even integers. The Monte Carlo table must reproduce
    // the leading Laurent data of the quadrature-oracle table fitted through
    // the same pipeline; subleading slots sit below the joint resolution of
    // the two fits (sampling noise on one side, basis truncation on the
    // other) and are only bounded through the location and order gates.
    {
        auto [mc, oracle] = saddle_tables(10 * n_samples, 2025);
        const Pole* lead_mc = mc.find(Rat(-1));
        const Pole* lead_or = oracle.find(Rat(-1));
        bool lead_ok = lead_mc && lead_or;
        bool locations_ok = true;
        bool orders_ok = true;
        for (const auto* t : {&mc, &oracle}) {
            for (const auto& p : t->poles) {
                locations_ok = locations_ok && p.location.is_integer();
                orders_ok = orders_ok && p.order <= 2;
            }
        }
        double rel_res = 1.0, rel_log = 1.0;
        if (lead_ok) {
            double anchor = std::abs(lead_or->principal[0]);
            rel_res = std::abs(lead_mc->principal[0] - lead_or->principal[0]) / anchor;
            Complex log_mc = lead_mc->order > 1 ? lead_mc->principal[1] : Complex(0.0, 0.0);
            Complex log_or = lead_or->order > 1 ? lead_or->principal[1] : Complex(0.0, 0.0);
            rel_log = std::abs(log_mc - log_or) / std::max(std::abs(log_or), anchor);
        }
        d << "saddle: MC vs oracle residue(-1) gap " << fmt(rel_res) << " rel, log slot gap "
          << fmt(rel_log) << " rel (bounds 0.02)";
        if (!lead_ok) d << " LEADING POLE MISSING";
        if (!locations_ok) d << " POLE OFF THE INTEGERS";
        if (!orders_ok) d << " ORDER ABOVE 2";
        ok = ok && lead_ok && locations_ok && orders_ok && rel_res <= 0.02 && rel_log <= 0.02;
    }

    res.seconds = elapsed_since(t0);
    if (res.seconds >= 120.0) {
        ok = false;
        d << "; over the 2 min budget";
    }
    res.pass = ok;
    res.details = d.str();
    return res;
}

CriterionResult verify_exact_algebra() {
    auto t0 = Clock::now();
    CriterionResult res;
    res.name = "exact-algebra";
    int checks = 0, failed = 0;
    std::string first_failure;
    auto expect = [&](bool cond, const std::string& what) {
        ++checks;
        if (!cond) {
            ++failed;
            if (first_failure.empty()) first_failure = what;
        }
    };

    auto tm1 = [](const SpectralCycle& c) { return monodromy(c) - c; };

    for (int k : {2, 3, 4, 5}) {
        for (int eps : {+1, -1}) {
            PhaseGerm phase = PhaseGerm::parse(monomial_phase_text(k, eps));
            ComponentSet cs = enumerate_components(phase, 1.0);
            const int N = std::lcm(4, k);
            std::string tag = " (k=" + std::to_string(k) + ", eps=" + std::to_string(eps) + ")";

            // point masses: T^k = id and the projector algebra
            for (int j = 0; j < k; ++j) {
                SpectralCycle delta = SpectralCycle::zero(k, eps);
                delta.coord[j] = Cyclotomic::from_rat(N, Rat(1));
                expect(monodromy_power(delta, k) == delta, "T^k != id" + tag);
            }

            std::vector<SpectralCycle> suite;
            for (int ap : {0, 1, -1}) {
                for (int an : {0, 1, -1}) {
                    ExactRegion xr;
                    xr.coeffs = {{Rat(ap), Rat(0)}, {Rat(an), Rat(0)}};
                    SpectralCycle g = gamma_cycle(phase, cs, xr);
                    SpectralCycle gh = gamma_hat(phase, cs, xr);
                    expect(variation(g) == tm1(gh), "var(cycle) != (T-1) closed lift" + tag);
                    suite.push_back(g);
                }
            }
            // a couple of dense deterministic cycles exercising the field
            for (std::uint64_t salt : {7ull, 23ull}) {
                SpectralCycle c = SpectralCycle::zero(k, eps);
                std::uint64_t st = salt * 1000 + k * 10 + (eps > 0);
                for (int j = 0; j < k; ++j) {
                    auto z = Cyclotomic::zeta(N, static_cast<std::int64_t>(splitmix64(st) % N));
                    z.scale(Rat(static_cast<std::int64_t>(splitmix64(st) % 5) - 2, 3));
                    c.coord[j] = Cyclotomic::from_rat(N, Rat(static_cast<std::int64_t>(splitmix64(st) % 7) - 3, 2)) + z;
                }
                suite.push_back(c);
            }

            for (const auto& c : suite) {
                expect(variation(canonical(c)) == tm1(c), "var(can(.)) != T-1" + tag);
                expect(canonical(variation(c)) == tm1(c), "can(var(.)) != T-1" + tag);
                SpectralCycle sum = SpectralCycle::zero(k, eps);
                for (int m = 0; m < k; ++m) sum += eigencomponent(c, m);
                expect(sum == c, "eigencomponents do not sum back" + tag);
                SpectralCycle inv = eigencomponent(c, 0);
                expect(theta_on_invariant(inv) == inv, "theta not identity on invariants" + tag);
            }
        }
    }

    // generic unipotent matrix: the series truncates after (T-1)/2
    {
        std::vector<std::vector<Rat>> M = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
        auto th = theta_series(M);
        expect(th[0][0] == Rat(1) && th[0][1] == Rat(0) && th[1][0] == Rat(-1, 2) &&
                   th[1][1] == Rat(1),
               "2x2 unipotent theta wrong");
        bool threw = false;
        try {
            theta_series({{Rat(2), Rat(0)}, {Rat(0), Rat(1)}});
        } catch (const DomainError&) {
            threw = true;
        }
        expect(threw, "non-unipotent input not rejected");
    }

    res.seconds = elapsed_since(t0);
    res.pass = failed == 0;
    std::ostringstream d;
    d << checks << " exact identities";
    if (failed)
        d << ", " << failed << " FAILED, first: " << first_failure;
    else
        d << ", all hold";
    res.details = d.str();
    return res;
}

std::vector<CriterionResult> run_acceptance(const std::string& name) {
    std::vector<CriterionResult> out;
    bool known = false;
    auto want = [&](const char* n) {
        if (name == "all" || name == n) {
            known = true;
            return true;
        }
        return false;
    };
    if (want("lemma1")) out.push_back(verify_lemma1());
    if (want("detection-1d")) out.push_back(verify_detection_1d());
    if (want("pole-order")) out.push_back(verify_pole_order());
    if (want("dictionary")) out.push_back(verify_dictionary());
    if (want("mc-2d")) out.push_back(verify_mc_2d());
    if (want("exact-algebra")) out.push_back(verify_exact_algebra());
    if (!known) throw DomainError("unknown verification case '" + name + "'");
    return out;
}

}  // namespace oscint
