#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscint/errors.hpp"
#include "oscint/expansion.hpp"
#include "oscint/mellin.hpp"

using oscint::AsymptoticExpansion;
using oscint::Complex;
using oscint::ContinueOptions;
using oscint::ExponentLattice;
using oscint::PoleTable;
using oscint::Rat;
using oscint::TwoSidedFunction;

namespace {

TwoSidedFunction step_function(double s0, bool both_sides) {
    auto one = [](double) { return Complex(1.0, 0.0); };
    auto zero = [](double) { return Complex(0.0, 0.0); };
    return TwoSidedFunction::from_callables(s0, one, both_sides ? one : zero);
}

}  // namespace

TEST_CASE("transform of a step function") {
    // phi = 1 on (0, s0): int_0^s0 t^lambda dt/t = s0^lambda / lambda
    const double s0 = 0.8;
    TwoSidedFunction phi = step_function(s0, false);
    Complex lam(1.0, 0.0);
    Complex got = oscint::mellin_eval(phi, lam);
    Complex want = Complex(s0, 0.0) / Complex(0.0, M_PI);
    CHECK(std::abs(got - want) <= 1e-10);

    Complex lam2(1.5, -0.5);
    Complex direct = std::pow(Complex(s0, 0.0), lam2) / lam2 / Complex(0.0, M_PI);
    CHECK(std::abs(oscint::mellin_eval(phi, lam2) - direct) <= 1e-9);
}

TEST_CASE("transform with both sides populated") {
    const double s0 = 0.8;
    TwoSidedFunction phi = step_function(s0, true);
    // at lambda = 1 the bracket is s0 - e^{-i pi} s0 = 2 s0
    Complex got = oscint::mellin_eval(phi, Complex(1.0, 0.0));
    Complex want = Complex(2.0 * s0, 0.0) / Complex(0.0, M_PI);
    CHECK(std::abs(got - want) <= 1e-10);
}

TEST_CASE("transform requires a positive real part") {
    TwoSidedFunction phi = step_function(1.0, false);
    CHECK_THROWS_AS(oscint::mellin_eval(phi, Complex(0.0, 1.0)), oscint::DomainError);
    CHECK_THROWS_AS(oscint::mellin_eval(phi, Complex(-0.5, 0.0)), oscint::DomainError);
}

TEST_CASE("log-power pair: residue is the constant-term gap") {
    // phi = (s/s0)^r (2 + Log(s/s0)) one side, 5 on the other
    std::vector<Complex> P = {Complex(2.0, 0.0), Complex(1.0, 0.0)};
    std::vector<Complex> Q = {Complex(5.0, 0.0)};
    const Rat r(1, 3);
    const double s0 = 1.0;

    Complex res = oscint::residue_lemma1(P, Q, r, s0);
    CHECK(std::abs(res - Complex(-3.0, 0.0)) <= 1e-12);

    TwoSidedFunction phi = oscint::lemma1_function(P, Q, r, s0);
    ContinueOptions opts;
    opts.zero_threshold = 1e-10;
    opts.threshold_absolute = true;
    opts.include_prefactor = false;
    PoleTable table = oscint::mellin_continue(phi, ExponentLattice::make({r}, 0, 1), opts);

    REQUIRE(table.find(-r) != nullptr);
    const auto* pole = table.find(-r);
    CHECK(pole->order == 2);  // top log power 1 pairs with an order-2 pole
    CHECK(std::abs(pole->principal[0] - Complex(-3.0, 0.0)) <= 1e-9);
    CHECK(std::abs(pole->principal[1] - Complex(-1.0, 0.0)) <= 1e-9);
}

TEST_CASE("residue identity holds across branch exponents") {
    std::vector<Complex> P = {Complex(0.3, -1.1), Complex(0.0, 0.5), Complex(-2.0, 0.0)};
    std::vector<Complex> Q = {Complex(-0.7, 0.2), Complex(1.0, 1.0)};
    for (Rat r : {Rat(1, 2), Rat(1), Rat(3, 2), Rat(7, 10)}) {
        Complex res = oscint::residue_lemma1(P, Q, r, 1.3);
        CHECK(std::abs(res - (P[0] - Q[0])) <= 1e-9);
    }
}

TEST_CASE("numeric contour extraction agrees with the assembly") {
    std::vector<Complex> P = {Complex(2.0, 0.0), Complex(1.0, 0.0)};
    std::vector<Complex> Q = {Complex(5.0, 0.0)};
    const Rat r(1, 3);
    TwoSidedFunction phi = oscint::lemma1_function(P, Q, r, 1.0);
    auto pp = oscint::principal_part_numeric(phi, r, r.to_double() + 1.0, 0.25, 2, 48);
    REQUIRE(pp.size() == 2);
    CHECK(std::abs(pp[0] - Complex(-3.0, 0.0)) <= 1e-8);
    CHECK(std::abs(pp[1] - Complex(-1.0, 0.0)) <= 1e-8);
}

TEST_CASE("pure power gives a simple pole with its coefficient as residue") {
    std::vector<Complex> P = {Complex(1.0, 0.0)};
    std::vector<Complex> Q = {Complex(0.0, 0.0)};
    TwoSidedFunction phi = oscint::lemma1_function(P, Q, Rat(1, 2), 1.0);
    ContinueOptions opts;
    opts.zero_threshold = 1e-10;
    opts.threshold_absolute = true;
    opts.include_prefactor = false;
    PoleTable table = oscint::mellin_continue(phi, ExponentLattice::make({Rat(1, 2)}, 1, 0), opts);
    REQUIRE(table.poles.size() == 1);
    CHECK(table.poles[0].location == Rat(-1, 2));
    CHECK(table.poles[0].order == 1);
    CHECK(std::abs(table.residue_at(Rat(-1, 2)) - Complex(1.0, 0.0)) <= 1e-10);
}

TEST_CASE("smooth two-sided profiles have no integer poles") {
    // phi(t) = t on both physical sides near 0 (phi(s) = s, globally smooth):
    // c^+_1 = 1, c^-_1 = -1, and the order-1 bracket cancels exactly
    AsymptoticExpansion e;
    e.add(+1, Rat(1), 0, Complex(1.0, 0.0));
    e.add(-1, Rat(1), 0, Complex(-1.0, 0.0));
    e.add(+1, Rat(2), 0, Complex(0.5, 0.0));
    e.add(-1, Rat(2), 0, Complex(0.5, 0.0));  // (-1)^2 parity: same sign
    auto lat = ExponentLattice::make({Rat(0)}, 2, 0);
    PoleTable table = oscint::principal_parts_from_expansion(e, lat, 1.0, false);
    table.apply_threshold(1e-12, true);
    CHECK(table.poles.empty());
}

TEST_CASE("smooth bump input yields an empty table") {
    // phi(s) = s near 0; evaluators carry a smooth falloff beyond t = 1/2
    auto pos = [](double t) {
        double w = t < 0.5 ? 1.0 : (t < 1.0 ? 0.5 * (1.0 + std::cos(M_PI * (2.0 * t - 1.0))) : 0.0);
        return Complex(t * w, 0.0);
    };
    auto neg = [&pos](double t) { return -pos(t); };
    TwoSidedFunction phi = TwoSidedFunction::from_callables(1.0, pos, neg);
    phi.has_expansion = true;
    phi.expansion.add(+1, Rat(1), 0, Complex(1.0, 0.0));
    phi.expansion.add(-1, Rat(1), 0, Complex(-1.0, 0.0));
    phi.expansion_valid_to = 0.5;
    phi.smooth_at_zero = true;

    ContinueOptions opts;
    opts.zero_threshold = 1e-8;
    opts.threshold_absolute = true;
    PoleTable table = oscint::mellin_continue(phi, ExponentLattice::make({Rat(0)}, 3, 0), opts);
    CHECK(table.poles.empty());
}

TEST_CASE("continuation agrees with the transform on the overlap") {
    std::vector<Complex> P = {Complex(1.0, 0.0), Complex(0.0, 2.0)};
    std::vector<Complex> Q = {Complex(-1.0, 0.5)};
    TwoSidedFunction phi = oscint::lemma1_function(P, Q, Rat(2, 5), 0.9);
    for (Complex lam : {Complex(1.0, 0.0), Complex(0.7, 0.4), Complex(2.0, -1.0)}) {
        Complex bracket = oscint::continued_bracket_eval(phi, lam, 1.0);
        Complex transform =
            std::pow(Complex(0.9, 0.0), -lam) * Complex(0.0, M_PI) * oscint::mellin_eval(phi, lam);
        CHECK(std::abs(bracket - transform) <= 1e-8 * std::max(1.0, std::abs(transform)));
    }
}

TEST_CASE("declared terms must sit on the lattice") {
    std::vector<Complex> P = {Complex(1.0, 0.0)};
    std::vector<Complex> Q = {Complex(0.0, 0.0)};
    TwoSidedFunction phi = oscint::lemma1_function(P, Q, Rat(1, 2), 1.0);
    CHECK_THROWS_AS(oscint::mellin_continue(phi, ExponentLattice::make({Rat(1, 3)}, 1, 0)),
                    oscint::LatticeMismatch);
}

TEST_CASE("continuation needs a declared expansion") {
    TwoSidedFunction phi = step_function(1.0, false);
    CHECK_THROWS_AS(oscint::mellin_continue(phi, ExponentLattice::make({Rat(0)}, 1, 0)),
                    oscint::NeedsExpansion);
}

TEST_CASE("certification rejects a wrong expansion") {
    std::vector<Complex> P = {Complex(1.0, 0.0)};
    std::vector<Complex> Q = {Complex(0.0, 0.0)};
    TwoSidedFunction phi = oscint::lemma1_function(P, Q, Rat(1, 2), 1.0);
    phi.expansion.pos[0].c = Complex(2.0, 0.0);  // lie about the coefficient
    CHECK_THROWS_AS(oscint::mellin_continue(phi, ExponentLattice::make({Rat(1, 2)}, 1, 0)),
                    oscint::AccuracyError);
}
