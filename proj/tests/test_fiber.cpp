#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "oscint/errors.hpp"
#include "oscint/fiber.hpp"

using oscint::Complex;
using oscint::FiberSamples;
using oscint::GridSpec;
using oscint::Rat;

namespace {

struct Setup {
    oscint::PhaseGerm phase;
    oscint::TestDensity density;
    oscint::ComponentSet components;
};

Setup make_setup(const char* phase_text, const char* m_text = "1", double radius = 1.0) {
    Setup s;
    s.phase = oscint::PhaseGerm::parse(phase_text);
    s.density.m = oscint::Poly::parse(m_text);
    s.density.radius = radius;
    s.components = oscint::enumerate_components(s.phase, radius);
    return s;
}

oscint::RegionCombination region_of(const Setup& s, const char* text) {
    return oscint::parse_region(s.components, text);
}

}  // namespace

TEST_CASE("grid geometry") {
    GridSpec g;
    g.s_min = 1e-2;
    g.s_max = 1.0;
    g.bins_per_decade = 10;
    CHECK(g.n_bins() == 20);
    CHECK(g.upper_edge() >= g.s_max);
    auto c = g.centers();
    REQUIRE(static_cast<int>(c.size()) == g.n_bins());
    CHECK(c[1] / c[0] == doctest::Approx(c[11] / c[10]));  // geometric
    CHECK(c.front() > g.s_min);
    CHECK(c.back() < g.upper_edge());
}

TEST_CASE("default grid covers the attainable values") {
    Setup s = make_setup("x^2");
    GridSpec g = oscint::default_grid(s.phase, s.density);
    CHECK(g.s_max == doctest::Approx(1.02));  // max x^2 on |x| <= 1, 2% headroom
    CHECK(g.s_min == doctest::Approx(g.s_max * 1e-7));
    CHECK(g.bins_per_decade == 16);
}

TEST_CASE("exact parabola rows") {
    Setup s = make_setup("x^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    // J(s) = sum over roots +-sqrt(s) of g / |f'| = g(sqrt(s)) / sqrt(s)
    int checked = 0;
    for (const auto& row : rows.rows) {
        if (row.side < 0) {
            CHECK(row.J == Complex(0.0, 0.0));  // f >= 0 never reaches s < 0
            continue;
        }
        if (row.s > 0.2) continue;  // stay on the cutoff plateau
        CHECK(row.J.real() == doctest::Approx(1.0 / std::sqrt(row.s)).epsilon(1e-12));
        CHECK(row.err == 0.0);
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("exact cubic rows are two-sided") {
    Setup s = make_setup("x^3");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    for (const auto& row : rows.rows) {
        if (row.s > 0.1) continue;
        // single root at sigma * s^{1/3}, |f'| = 3 s^{2/3}, either side
        CHECK(row.J.real() == doctest::Approx(std::pow(row.s, -2.0 / 3.0) / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("exact rows are linear in the region coefficients") {
    Setup s = make_setup("x^3");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    auto all = oscint::exact_fiber_1d(s.phase, s.density, s.components, region_of(s, "all:1"), grid);
    auto plus = oscint::exact_fiber_1d(s.phase, s.density, s.components, region_of(s, "+:1"), grid);
    auto minus = oscint::exact_fiber_1d(s.phase, s.density, s.components, region_of(s, "-:1"), grid);
    for (std::size_t i = 0; i < all.rows.size(); ++i)
        CHECK(std::abs(all.rows[i].J - plus.rows[i].J - minus.rows[i].J) <= 1e-14);
}

TEST_CASE("exact profile carries its expansion") {
    Setup s = make_setup("x^3");
    auto phi = oscint::exact_two_sided_1d(s.phase, s.density, s.components, region_of(s, "all:1"));
    CHECK(phi.has_expansion);
    CHECK(phi.s0 == doctest::Approx(1.0));
    CHECK(phi.expansion_valid_to == doctest::Approx(0.125));  // plateau image (1/2)^3
    REQUIRE(phi.expansion.pos.size() == 1);
    REQUIRE(phi.expansion.neg.size() == 1);
    CHECK(phi.expansion.pos[0].r == Rat(1, 3));
    CHECK(phi.expansion.pos[0].c == Complex(1.0 / 3.0, 0.0));
    CHECK(phi.expansion.neg[0].r == Rat(1, 3));
    CHECK(phi.expansion.neg[0].c == Complex(-1.0 / 3.0, 0.0));
    // evaluators match the expansion inside the plateau image
    CHECK(std::abs(phi.pos(0.001) - Complex(std::cbrt(0.001) / 3.0, 0.0)) <= 1e-15);
    CHECK(std::abs(phi.neg(0.001) - Complex(-std::cbrt(0.001) / 3.0, 0.0)) <= 1e-15);
}

TEST_CASE("csv round-trip") {
    Setup s = make_setup("x^3", "x", 0.8);
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    FiberSamples back = FiberSamples::from_csv(rows.to_csv());
    REQUIRE(back.rows.size() == rows.rows.size());
    CHECK(back.grid.bins_per_decade == grid.bins_per_decade);
    for (std::size_t i = 0; i < rows.rows.size(); ++i) {
        CHECK(back.rows[i].side == rows.rows[i].side);
        CHECK(back.rows[i].s == doctest::Approx(rows.rows[i].s).epsilon(1e-14));
        CHECK(std::abs(back.rows[i].J - rows.rows[i].J) <= 1e-14 * (1.0 + std::abs(rows.rows[i].J)));
    }
    CHECK_THROWS_AS(FiberSamples::from_csv("not,a,fiber\n1,2,3\n"), oscint::ParseError);
}

TEST_CASE("monte carlo matches the exact density") {
    Setup s = make_setup("x^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    oscint::SampleOptions opts;
    opts.n_samples = 400'000;
    opts.seed = 5;
    FiberSamples mc = oscint::sample_fiber_integral(s.phase, s.density, s.components,
                                                    region_of(s, "all:1"), grid, opts);
    FiberSamples exact = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                                region_of(s, "all:1"), grid);
    int used = 0, within3 = 0;
    for (int b = 0; b < grid.n_bins(); ++b) {
        const auto* m = mc.row(+1, b);
        const auto* e = exact.row(+1, b);
        REQUIRE(m != nullptr);
        REQUIRE(e != nullptr);
        if (m->s < 1e-4 || m->s > 0.2 || m->err == 0.0) continue;
        ++used;
        if (std::abs(m->J - e->J) <= 3.0 * m->err) ++within3;
    }
    CHECK(used > 30);
    // 3-sigma coverage; jackknife errors make this comfortably > 95%
    CHECK(double(within3) >= 0.9 * used);
}

TEST_CASE("monte carlo is deterministic in the seed") {
    Setup s = make_setup("x^2-y^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    oscint::SampleOptions opts;
    opts.n_samples = 50'000;
    opts.seed = 9;
    auto a = oscint::sample_fiber_integral(s.phase, s.density, s.components,
                                           region_of(s, "all:1"), grid, opts);
    auto b = oscint::sample_fiber_integral(s.phase, s.density, s.components,
                                           region_of(s, "all:1"), grid, opts);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].J == b.rows[i].J);
        CHECK(a.rows[i].err == b.rows[i].err);
    }
}

TEST_CASE("empty regions are rejected") {
    Setup s = make_setup("x^2");
    CHECK_THROWS_AS(oscint::sample_fiber_integral(s.phase, s.density, s.components,
                                                  region_of(s, ""), oscint::default_grid(s.phase, s.density)),
                    oscint::EmptyRegion);
}

TEST_CASE("fit recovers exact coefficients") {
    Setup s = make_setup("x^3");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    auto lat = oscint::ExponentLattice::make({Rat(0), Rat(1, 3), Rat(2, 3)}, 1, 0);
    oscint::FitOptions fopts;
    fopts.s_fit_max = 0.125;
    oscint::FitReport report;
    auto fit = oscint::fit_expansion(rows, lat, fopts, &report);
    CHECK(report.rows_used > 0);
    CHECK(report.condition > 0.0);
    CHECK(report.max_residual_phi <= 1e-10);

    double cpos = 0.0, cneg = 0.0, junk = 0.0;
    for (const auto& t : fit.pos) {
        if (t.r == Rat(1, 3))
            cpos += t.c.real();
        else
            junk += std::abs(t.c);
    }
    for (const auto& t : fit.neg) {
        if (t.r == Rat(1, 3))
            cneg += t.c.real();
        else
            junk += std::abs(t.c);
    }
    CHECK(cpos == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    CHECK(cneg == doctest::Approx(-1.0 / 3.0).epsilon(1e-8));
    CHECK(junk <= 1e-8);
    // exact rows: uncertainties collapse
    for (const auto& t : fit.pos) CHECK(t.sigma <= 1e-8);
}

TEST_CASE("fit reports uncertainties on noisy rows") {
    Setup s = make_setup("x^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    oscint::SampleOptions opts;
    opts.n_samples = 200'000;
    FiberSamples mc = oscint::sample_fiber_integral(s.phase, s.density, s.components,
                                                    region_of(s, "all:1"), grid, opts);
    auto lat = oscint::ExponentLattice::make({Rat(0), Rat(1, 2)}, 1, 0);
    oscint::FitOptions fopts;
    fopts.s_fit_max = 0.2;
    auto fit = oscint::fit_expansion(mc, lat, fopts);
    bool found = false;
    for (const auto& t : fit.pos)
        if (t.r == Rat(1, 2)) {
            found = true;
            CHECK(t.sigma > 0.0);
            CHECK(std::abs(t.c - Complex(1.0, 0.0)) <= 5.0 * t.sigma + 0.02);
        }
    CHECK(found);
}

TEST_CASE("ill-conditioned bases are refused") {
    Setup s = make_setup("x^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    auto lat = oscint::ExponentLattice::make({Rat(0), Rat(1, 2)}, 2, 2);
    oscint::FitOptions fopts;
    fopts.cond_limit = 1.5;  // absurdly tight on purpose
    CHECK_THROWS_AS(oscint::fit_expansion(rows, lat, fopts), oscint::IllConditioned);
}

TEST_CASE("interpolated profile from binned data") {
    Setup s = make_setup("x^2");
    GridSpec grid = oscint::default_grid(s.phase, s.density);
    FiberSamples rows = oscint::exact_fiber_1d(s.phase, s.density, s.components,
                                               region_of(s, "all:1"), grid);
    auto lat = oscint::ExponentLattice::make({Rat(0), Rat(1, 2)}, 1, 0);
    auto phi = oscint::two_sided_from_samples(rows, lat);
    CHECK(phi.has_expansion);
    CHECK(phi.s0 == doctest::Approx(grid.upper_edge()));
    // at a bin center the interpolant passes through t * J(t) = sqrt(t)
    double t = grid.center(40);
    CHECK(std::abs(phi.pos(t) - Complex(std::sqrt(t), 0.0)) <= 1e-10);
    CHECK(std::abs(phi.neg(t)) <= 1e-12);
}
