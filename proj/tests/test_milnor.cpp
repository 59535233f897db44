#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscint/errors.hpp"
#include "oscint/milnor.hpp"

using oscint::Complex;
using oscint::Cyclotomic;
using oscint::Rat;
using oscint::SpectralCycle;

namespace {

struct Model {
    oscint::PhaseGerm phase;
    oscint::ComponentSet cs;
};

Model make_model(int k, int eps) {
    Model m;
    std::string text = (eps > 0 ? "x^" : "-x^") + std::to_string(k);
    m.phase = oscint::PhaseGerm::parse(text);
    m.cs = oscint::enumerate_components(m.phase, 1.0);
    return m;
}

oscint::ExactRegion region_of(const Model& m, const std::string& text) {
    return oscint::parse_region_exact(m.cs, text);
}

SpectralCycle point_mass(int k, int eps, int j, const Rat& w) {
    SpectralCycle c = SpectralCycle::zero(k, eps);
    c.coord[j] = Cyclotomic::from_rat(c.field_order(), w);
    return c;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(oscint::cyclotomic_poly(1) == std::vector<std::int64_t>{-1, 1});
    CHECK(oscint::cyclotomic_poly(4) == std::vector<std::int64_t>{1, 0, 1});
    CHECK(oscint::cyclotomic_poly(6) == std::vector<std::int64_t>{1, -1, 1});
    CHECK(oscint::cyclotomic_poly(12) == std::vector<std::int64_t>{1, 0, -1, 0, 1});
}

TEST_CASE("cyclotomic arithmetic") {
    // zeta_12 powers wrap and reduce
    CHECK(Cyclotomic::zeta(12, 12) == Cyclotomic::from_rat(12, Rat(1)));
    CHECK(Cyclotomic::zeta(12, -1) == Cyclotomic::zeta(12, 11));
    CHECK(Cyclotomic::zeta(12, 7) * Cyclotomic::zeta(12, 5) == Cyclotomic::from_rat(12, Rat(1)));

    // 1 + zeta_3 + zeta_3^2 = 0, embedded in Q(zeta_12)
    Cyclotomic s = Cyclotomic::zeta(12, 0) + Cyclotomic::zeta(12, 4) + Cyclotomic::zeta(12, 8);
    CHECK(s.is_zero());

    Complex z = Cyclotomic::zeta(12, 1).embed();
    CHECK(z.real() == doctest::Approx(std::cos(M_PI / 6.0)));
    CHECK(z.imag() == doctest::Approx(std::sin(M_PI / 6.0)));

    Cyclotomic g = Cyclotomic::gaussian(4, Rat(1, 2), Rat(-1, 3));
    CHECK(g.embed().real() == doctest::Approx(0.5));
    CHECK(g.embed().imag() == doctest::Approx(-1.0 / 3.0));

    Rat value;
    CHECK(Cyclotomic::from_rat(8, Rat(5, 7)).is_rational(&value));
    CHECK(value == Rat(5, 7));
    CHECK(!Cyclotomic::zeta(8, 1).is_rational());

    Cyclotomic h = Cyclotomic::zeta(12, 5);
    h.scale(Rat(-3, 2));
    CHECK((h + Cyclotomic::zeta(12, 5).scale(Rat(3, 2))).is_zero());
}

TEST_CASE("monodromy shifts point masses") {
    SpectralCycle c = point_mass(3, 1, 0, Rat(1));
    SpectralCycle t = oscint::monodromy(c);
    CHECK(t == point_mass(3, 1, 1, Rat(1)));
    CHECK(oscint::monodromy_power(c, 3) == c);
    CHECK(oscint::monodromy_power(c, -1) == point_mass(3, 1, 2, Rat(1)));
    CHECK(oscint::monodromy_power(c, 7) == point_mass(3, 1, 1, Rat(1)));
}

TEST_CASE("variation and the canonical map") {
    SpectralCycle c = point_mass(4, -1, 1, Rat(2));
    CHECK(oscint::variation(c) == oscint::monodromy(c) - c);
    CHECK(oscint::canonical(c) == c);  // finite fiber: already compact
}

TEST_CASE("region classes on the model fiber") {
    // full region, positive parabola: orientation flips at the negative root
    Model m2 = make_model(2, +1);
    SpectralCycle g2 = oscint::gamma_cycle(m2.phase, m2.cs, region_of(m2, "+:1,-:1"));
    CHECK(g2.coord[0] == Cyclotomic::from_rat(4, Rat(1)));
    CHECK(g2.coord[1] == Cyclotomic::from_rat(4, Rat(-1)));

    // odd exponent: the negative real point comes from the carried fiber
    Model m3 = make_model(3, +1);
    SpectralCycle g3 = oscint::gamma_cycle(m3.phase, m3.cs, region_of(m3, "+:1,-:1"));
    CHECK(g3.coord[0] == Cyclotomic::from_rat(12, Rat(1)));
    CHECK(g3.coord[1].is_zero());
    CHECK(g3.coord[2] == Cyclotomic::from_rat(12, Rat(-1)));

    // negative parabola: everything lives on the carried fiber
    Model m2n = make_model(2, -1);
    SpectralCycle g2n = oscint::gamma_cycle(m2n.phase, m2n.cs, region_of(m2n, "+:1,-:1"));
    CHECK(g2n.coord[0] == Cyclotomic::from_rat(4, Rat(-1)));
    CHECK(g2n.coord[1] == Cyclotomic::from_rat(4, Rat(1)));

    // quartic, left half-line only
    Model m4 = make_model(4, +1);
    SpectralCycle g4 = oscint::gamma_cycle(m4.phase, m4.cs, region_of(m4, "-:1"));
    CHECK(g4.coord[0].is_zero());
    CHECK(g4.coord[1].is_zero());
    CHECK(g4.coord[2] == Cyclotomic::from_rat(4, Rat(-1)));
    CHECK(g4.coord[3].is_zero());

    // complex coefficients survive exactly
    SpectralCycle gc = oscint::gamma_cycle(m2.phase, m2.cs, region_of(m2, "+:1/2-1/3i"));
    CHECK(gc.coord[0] == Cyclotomic::gaussian(4, Rat(1, 2), Rat(-1, 3)));

    // empty region text gives the zero cycle
    CHECK(oscint::gamma_cycle(m2.phase, m2.cs, region_of(m2, "")).is_zero());

    // the compactly-supported variant agrees coefficient-wise in d = 1
    CHECK(oscint::gamma_hat(m3.phase, m3.cs, region_of(m3, "+:1,-:1")) == g3);
}

TEST_CASE("eigencomponents decompose and diagonalize") {
    Model m = make_model(5, +1);
    SpectralCycle c = SpectralCycle::zero(5, 1);
    const int N = c.field_order();  // 20
    for (int j = 0; j < 5; ++j)
        c.coord[j] = Cyclotomic::zeta(N, 3 * j) + Cyclotomic::from_rat(N, Rat(j, 2));

    SpectralCycle sum = SpectralCycle::zero(5, 1);
    for (int mth = 0; mth < 5; ++mth) {
        SpectralCycle e = oscint::eigencomponent(c, mth);
        sum += e;
        // T e = exp(-2 pi i m / 5) e, exactly
        SpectralCycle lhs = oscint::monodromy(e);
        SpectralCycle rhs = e;
        rhs.scale(Cyclotomic::zeta(N, -mth * (N / 5)));
        CHECK(lhs == rhs);
    }
    CHECK(sum == c);
}

TEST_CASE("pole predictions from the invariant structure") {
    Model m2 = make_model(2, +1);
    auto full = oscint::predict_pole_cosets(m2.phase, m2.cs, region_of(m2, "+:1,-:1"));
    CHECK(full.at(Rat(0)) == 0);     // integer poles cancel on the full line
    CHECK(full.at(Rat(1, 2)) == 1);

    auto half = oscint::predict_pole_cosets(m2.phase, m2.cs, region_of(m2, "+:1"));
    CHECK(half.at(Rat(0)) == 1);
    CHECK(half.at(Rat(1, 2)) == 1);

    Model m3 = make_model(3, +1);
    auto cubic = oscint::predict_pole_cosets(m3.phase, m3.cs, region_of(m3, "+:1,-:1"));
    CHECK(cubic.at(Rat(0)) == 0);
    CHECK(cubic.at(Rat(1, 3)) == 1);
    CHECK(cubic.at(Rat(2, 3)) == 1);
}

TEST_CASE("theta series on unipotent matrices") {
    using Row = std::vector<Rat>;
    auto th = oscint::theta_series({Row{Rat(1), Rat(0)}, Row{Rat(1), Rat(1)}});
    CHECK(th[0][0] == Rat(1));
    CHECK(th[0][1] == Rat(0));
    CHECK(th[1][0] == Rat(-1, 2));
    CHECK(th[1][1] == Rat(1));

    // two-step nilpotent: Theta = I - N/2 + N^2/3
    auto th3 = oscint::theta_series({Row{Rat(1), Rat(1), Rat(0)},
                                     Row{Rat(0), Rat(1), Rat(1)},
                                     Row{Rat(0), Rat(0), Rat(1)}});
    CHECK(th3[0][0] == Rat(1));
    CHECK(th3[0][1] == Rat(-1, 2));
    CHECK(th3[0][2] == Rat(1, 3));
    CHECK(th3[1][2] == Rat(-1, 2));
    CHECK(th3[2][2] == Rat(1));
    CHECK(th3[1][0] == Rat(0));

    auto id = oscint::theta_series({Row{Rat(1), Rat(0)}, Row{Rat(0), Rat(1)}});
    CHECK(id[0][0] == Rat(1));
    CHECK(id[0][1] == Rat(0));

    CHECK_THROWS_AS(oscint::theta_series({Row{Rat(2), Rat(0)}, Row{Rat(0), Rat(1)}}),
                    oscint::DomainError);
}

TEST_CASE("theta fixes invariant cycles") {
    SpectralCycle c = SpectralCycle::zero(3, 1);
    for (int j = 0; j < 3; ++j) c.coord[j] = Cyclotomic::from_rat(12, Rat(1, 2));
    CHECK(oscint::monodromy(c) == c);
    CHECK(oscint::theta_on_invariant(c) == c);
}

TEST_CASE("spectrum of diagonal phases") {
    CHECK(oscint::pham_spectrum({2}) == std::vector<Rat>{Rat(1, 2)});
    CHECK(oscint::pham_spectrum({3}) == std::vector<Rat>{Rat(1, 3), Rat(2, 3)});
    CHECK(oscint::pham_spectrum({2, 2}) == std::vector<Rat>{Rat(0)});
    CHECK(oscint::pham_spectrum({3, 2}) == std::vector<Rat>{Rat(1, 6), Rat(5, 6)});

    auto lat = oscint::spectrum_lattice(oscint::PhaseGerm::parse("x^3"), 2, 1);
    CHECK(lat.contains_coset(Rat(0)));
    CHECK(lat.contains_coset(Rat(1, 3)));
    CHECK(lat.contains_coset(Rat(2, 3)));
    CHECK(lat.nu_max == 2);
    CHECK(lat.max_log_power == 1);
}

TEST_CASE("exact region parsing") {
    Model m = make_model(2, +1);
    auto r = region_of(m, "+:2/3-1/3i,-:0.5");
    CHECK(r.coeffs[m.cs.cell_index.at("+")] == std::pair{Rat(2, 3), Rat(-1, 3)});
    CHECK(r.coeffs[m.cs.cell_index.at("-")] == std::pair{Rat(1, 2), Rat(0)});
    CHECK(region_of(m, "").all_zero());
    CHECK_THROWS_AS(region_of(m, "+:one"), oscint::ParseError);

    auto rc = r.to_complex();
    CHECK(rc.coeffs[m.cs.cell_index.at("+")] == Complex(2.0 / 3.0, -1.0 / 3.0));
}
