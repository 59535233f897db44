#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscint/asympt.hpp"
#include "oscint/errors.hpp"
#include "oscint/fiber.hpp"
#include "oscint/model.hpp"

using oscint::AsymptoticExpansion;
using oscint::Complex;
using oscint::OscillatoryExpansion;
using oscint::Rat;

namespace {

oscint::TwoSidedFunction exact_profile(const char* phase_text, const char* region_text) {
    auto phase = oscint::PhaseGerm::parse(phase_text);
    oscint::TestDensity density;
    density.m = oscint::Poly::parse("1");
    density.radius = 1.0;
    auto cs = oscint::enumerate_components(phase, 1.0);
    auto region = oscint::parse_region(cs, region_text);
    return oscint::exact_two_sided_1d(phase, density, cs, region);
}

}  // namespace

TEST_CASE("dictionary on a one-sided linear profile") {
    // phi = t on (0, 1): I(tau) = int_0^1 e^{i tau s} ds ~ i / tau
    AsymptoticExpansion e;
    e.add(+1, Rat(1), 0, Complex(1.0, 0.0));
    auto pred = oscint::oscillatory_from_expansion(e, +1);
    REQUIRE(pred.terms.size() == 1);
    CHECK(pred.terms[0].r == Rat(1));
    CHECK(pred.terms[0].m == 0);
    CHECK(std::abs(pred.terms[0].c - Complex(0.0, 1.0)) <= 1e-14);  // Gamma(1) e^{i pi/2}
}

TEST_CASE("dictionary reproduces the Fresnel constant") {
    AsymptoticExpansion e;
    e.add(+1, Rat(1, 2), 0, Complex(1.0, 0.0));
    auto pred = oscint::oscillatory_from_expansion(e, +1);
    REQUIRE(pred.terms.size() == 1);
    Complex want = std::sqrt(M_PI) * Complex(std::cos(M_PI / 4.0), std::sin(M_PI / 4.0));
    CHECK(std::abs(pred.terms[0].c - want) <= 1e-12);
}

TEST_CASE("smooth profiles contribute nothing at integer exponents") {
    AsymptoticExpansion e;
    e.add(+1, Rat(1), 0, Complex(2.5, 0.0));
    e.add(-1, Rat(1), 0, Complex(-2.5, 0.0));  // c^- = -c^+ at r = 1
    auto pred = oscint::oscillatory_from_expansion(e, +1);
    pred.canonicalize();
    CHECK(pred.empty());
}

TEST_CASE("profile exponents must be integrable") {
    CHECK_THROWS_AS(AsymptoticExpansion{}.add(+1, Rat(0), 0, Complex(1.0, 0.0)),
                    oscint::DomainError);
    AsymptoticExpansion e;
    e.pos.push_back({Rat(0), 0, Complex(1.0, 0.0), 0.0});  // bypass the add guard
    CHECK_THROWS_AS(oscint::oscillatory_from_expansion(e, +1), oscint::DomainError);
    AsymptoticExpansion f;
    f.add(+1, Rat(1), 3, Complex(1.0, 0.0));  // log powers above 2 unsupported
    CHECK_THROWS_AS(oscint::oscillatory_from_expansion(f, +1), oscint::UnsupportedFamily);
}

TEST_CASE("opposite direction conjugates real data") {
    auto phi = exact_profile("x^3", "all:1");
    auto plus = oscint::oscillatory_from_expansion(phi.expansion, +1);
    auto minus = oscint::oscillatory_from_expansion(phi.expansion, -1);
    double tau = 250.0;
    Complex a = plus.eval(tau);
    Complex b = minus.eval(-tau);
    CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-12));
    CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-12));
}

TEST_CASE("numeric evaluation approaches the predicted expansion") {
    auto phi = exact_profile("x^3", "all:1");
    auto pred = oscint::oscillatory_from_expansion(phi.expansion, +1);
    // tau^{-1/3} decay: relative gap shrinks with tau
    double tau = 400.0;
    Complex num = oscint::oscillatory_eval(phi, tau, 1e-9);
    Complex lead = pred.eval(tau);
    CHECK(std::abs(num - lead) <= 0.02 * std::abs(lead));
}

TEST_CASE("expansion evaluation and decay bookkeeping") {
    OscillatoryExpansion e;
    e.direction = +1;
    e.terms.push_back({Rat(1, 2), 0, Complex(2.0, 0.0)});
    e.terms.push_back({Rat(1), 1, Complex(0.0, 3.0)});
    CHECK(e.min_decay() == Rat(1, 2));
    double tau = 100.0;
    Complex want = Complex(2.0 / std::sqrt(tau), 0.0) +
                   Complex(0.0, 3.0) * std::log(tau) / tau;
    CHECK(std::abs(e.eval(tau) - want) <= 1e-14);

    OscillatoryExpansion m;
    m.terms.push_back({Rat(1), 0, Complex(1.0, 0.0)});
    m.terms.push_back({Rat(1), 0, Complex(-1.0, 0.0)});
    m.canonicalize();
    CHECK(m.empty());
    CHECK(m.min_decay() == Rat(0));
}

TEST_CASE("oscillatory fit recovers planted coefficients") {
    std::vector<double> taus;
    std::vector<Complex> values;
    for (int i = 0; i < 24; ++i) {
        double tau = 10.0 * std::pow(1.45, i);
        taus.push_back(tau);
        values.push_back(Complex(2.0, 0.0) / std::sqrt(tau) +
                         Complex(3.0, 1.0) * std::log(tau) / tau);
    }
    std::vector<std::pair<Rat, int>> basis = {{Rat(1, 2), 0}, {Rat(1), 1}};
    oscint::OscFitReport report;
    auto fit = oscint::fit_oscillatory(taus, values, basis, +1, 1e12, &report);
    CHECK(report.rows_used == 24);
    REQUIRE(fit.terms.size() == 2);
    for (const auto& t : fit.terms) {
        if (t.r == Rat(1, 2)) CHECK(std::abs(t.c - Complex(2.0, 0.0)) <= 1e-9);
        if (t.r == Rat(1)) CHECK(std::abs(t.c - Complex(3.0, 1.0)) <= 1e-9);
    }
    CHECK(oscint::basis_of(fit) == basis);
    CHECK_THROWS_AS(oscint::fit_oscillatory(taus, values, basis, +1, 1.0001),
                    oscint::IllConditioned);
}

TEST_CASE("pole assembly alias keeps the bracket normalization") {
    AsymptoticExpansion e;
    e.add(+1, Rat(1, 2), 0, Complex(1.0, 0.0));
    auto lat = oscint::ExponentLattice::make({Rat(1, 2)}, 0, 0);
    auto bracket = oscint::poles_from_expansion(e, lat);
    REQUIRE(bracket.poles.size() == 1);
    CHECK(!bracket.prefactor_included);
    CHECK(std::abs(bracket.residue_at(Rat(-1, 2)) - Complex(1.0, 0.0)) <= 1e-14);

    auto transform = oscint::poles_from_expansion(e, lat, 1.0, true);
    CHECK(transform.prefactor_included);
    // dividing by i pi rotates the residue to -i / pi
    CHECK(std::abs(transform.residue_at(Rat(-1, 2)) - Complex(0.0, -1.0 / M_PI)) <= 1e-14);
}
