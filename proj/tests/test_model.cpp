#include <doctest.h>

#include <set>
#include <string>

#include "oscint/errors.hpp"
#include "oscint/model.hpp"

using oscint::Complex;
using oscint::Poly;
using oscint::Rat;

TEST_CASE("polynomial parsing") {
    Poly p = Poly::parse("x^2 - y^2");
    CHECK(p.coeff(2, 0) == Rat(1));
    CHECK(p.coeff(0, 2) == Rat(-1));
    CHECK(p.dim() == 2);

    Poly q = Poly::parse("1+x");
    CHECK(q.coeff(0, 0) == Rat(1));
    CHECK(q.coeff(1, 0) == Rat(1));
    CHECK(q.dim() == 1);

    Poly r = Poly::parse("2*x^3");
    CHECK(r.coeff(3, 0) == Rat(2));
    CHECK(Poly::parse("-x^4").coeff(4, 0) == Rat(-1));
    CHECK(Poly::parse("0.5*x").coeff(1, 0) == Rat(1, 2));

    CHECK_THROWS_AS(Poly::parse("x^"), oscint::ParseError);
    CHECK_THROWS_AS(Poly::parse("z"), oscint::ParseError);
    CHECK_THROWS_AS(Poly::parse(""), oscint::ParseError);
}

TEST_CASE("polynomial evaluation and gradient") {
    Poly p = Poly::parse("x^2-y^2");
    CHECK(p.eval(2.0, 1.0) == doctest::Approx(3.0));
    auto g = p.gradient(2.0, 1.0);
    CHECK(g[0] == doctest::Approx(4.0));
    CHECK(g[1] == doctest::Approx(-2.0));

    Poly q = Poly::parse("x^3");
    CHECK(q.eval(-2.0) == doctest::Approx(-8.0));
    CHECK(q.gradient(-2.0)[0] == doctest::Approx(12.0));
}

TEST_CASE("phase family detection") {
    auto m = oscint::PhaseGerm::parse("x^2");
    CHECK(m.family == oscint::PhaseFamily::Monomial1D);
    CHECK(m.k == 2);
    CHECK(m.eps == 1);

    auto n = oscint::PhaseGerm::parse("-x^5");
    CHECK(n.family == oscint::PhaseFamily::Monomial1D);
    CHECK(n.k == 5);
    CHECK(n.eps == -1);

    auto bp = oscint::PhaseGerm::parse("x^2-y^3");
    CHECK(bp.family == oscint::PhaseFamily::BrieskornPham);
    CHECK(bp.bp_a[0] == 2);
    CHECK(bp.bp_a[1] == 3);
    CHECK(bp.bp_eps[0] == 1);
    CHECK(bp.bp_eps[1] == -1);

    CHECK(oscint::PhaseGerm::parse("x^2+x^3*y").family == oscint::PhaseFamily::GeneralPolynomial);
}

TEST_CASE("cutoff profile") {
    using oscint::TestDensity;
    CHECK(TestDensity::cutoff(0.0) == 1.0);
    CHECK(TestDensity::cutoff(0.5) == 1.0);
    CHECK(TestDensity::cutoff(1.0) == 0.0);
    CHECK(TestDensity::cutoff(2.0) == 0.0);
    CHECK(TestDensity::cutoff(0.75) == doctest::Approx(0.5));  // quintic midpoint
    CHECK(TestDensity::cutoff(0.6) > TestDensity::cutoff(0.8));
    // C^2 join at the plateau edge
    CHECK(TestDensity::cutoff(0.5 + 1e-5) == doctest::Approx(1.0).epsilon(1e-9));

    TestDensity d;
    d.m = Poly::parse("x");
    d.radius = 2.0;
    CHECK(d.eval(0.5) == doctest::Approx(0.5));  // plateau: |x| <= 1
    CHECK(d.eval(3.0) == 0.0);
    CHECK(d.plateau_contains(0.9));
    CHECK(!d.plateau_contains(1.1));
}

TEST_CASE("component enumeration in one dimension") {
    auto phase = oscint::PhaseGerm::parse("x^3");
    auto cs = oscint::enumerate_components(phase, 1.0);
    REQUIRE(cs.size() == 2);
    CHECK(cs.components[0].descriptor == "+");
    CHECK(cs.components[1].descriptor == "-");
    CHECK(cs.component_of(0.5) == 0);
    CHECK(cs.component_of(-0.5) == 1);
}

TEST_CASE("component enumeration in two dimensions") {
    auto cone = oscint::enumerate_components(oscint::PhaseGerm::parse("x^2+y^2"), 1.0);
    REQUIRE(cone.size() == 1);
    CHECK(cone.components[0].descriptor == "**+");

    auto saddle = oscint::enumerate_components(oscint::PhaseGerm::parse("x^2-y^2"), 1.0);
    REQUIRE(saddle.size() == 4);
    std::set<std::string> descriptors;
    for (const auto& c : saddle.components) descriptors.insert(c.descriptor);
    CHECK(descriptors == std::set<std::string>{"+*+", "-*+", "*+-", "*--"});
    // the right wedge spans both signs of y
    CHECK(saddle.component_of(0.5, 0.1) == saddle.cell_index.at("+++"));
    CHECK(saddle.component_of(0.5, -0.1) == saddle.component_of(0.5, 0.1));
    CHECK(saddle.component_of(0.1, 0.5) == saddle.cell_index.at("++-"));
    CHECK(saddle.component_of(0.4, 0.4) == -1);  // on the wall x = y
}

TEST_CASE("region combinations parse and format") {
    auto phase = oscint::PhaseGerm::parse("x^2");
    auto cs = oscint::enumerate_components(phase, 1.0);
    auto all = oscint::parse_region(cs, "all:1");
    CHECK(all.coeffs[0] == Complex(1.0, 0.0));
    CHECK(all.coeffs[1] == Complex(1.0, 0.0));

    auto mixed = oscint::parse_region(cs, "+:1,-:-0.5i");
    CHECK(mixed.coeffs[cs.cell_index.at("+")] == Complex(1.0, 0.0));
    CHECK(mixed.coeffs[cs.cell_index.at("-")] == Complex(0.0, -0.5));

    CHECK(oscint::parse_region(cs, "").all_zero());
    CHECK_THROWS_AS(oscint::parse_region(cs, "north:1"), oscint::ParseError);
    CHECK_THROWS_AS(oscint::parse_region(cs, "+"), oscint::ParseError);

    auto rt = oscint::parse_region(cs, oscint::format_region(cs, mixed));
    CHECK(rt.coeffs[0] == mixed.coeffs[0]);
    CHECK(rt.coeffs[1] == mixed.coeffs[1]);
}

TEST_CASE("boundary currents") {
    auto saddle = oscint::enumerate_components(oscint::PhaseGerm::parse("x^2-y^2"), 1.0);
    CHECK(oscint::boundary_at_origin(saddle, oscint::parse_region(saddle, "all:1")));
    CHECK(!oscint::boundary_at_origin(saddle, oscint::parse_region(saddle, "+*+:1")));
    // one dimension: the zero set meets the ball at the origin only
    auto line = oscint::enumerate_components(oscint::PhaseGerm::parse("x^3"), 1.0);
    CHECK(oscint::boundary_at_origin(line, oscint::parse_region(line, "+:1")));
}

TEST_CASE("default transform scale") {
    CHECK(oscint::PhaseGerm::parse("x^2").default_s0(1.0) == doctest::Approx(0.25));
    CHECK(oscint::PhaseGerm::parse("x^2").default_s0(0.5) == doctest::Approx(0.125));
}
