#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "oscint/num.hpp"
#include "oscint/rat.hpp"

namespace oscint {

// Polynomial in x (and optionally y) with exact rational coefficients.
class Poly {
  public:
    // (x exponent, y exponent) -> coefficient; zero coefficients never stored
    std::map<std::pair<int, int>, Rat> terms;

    static Poly parse(const std::string& text);

    int dim() const;  // 1 unless y appears
    bool is_zero() const { return terms.empty(); }
    Rat coeff(int i, int j) const;
    double eval(double x, double y = 0.0) const;
    std::array<double, 2> gradient(double x, double y = 0.0) const;
    std::string str() const;
};

enum class PhaseFamily { Monomial1D, BrieskornPham, GeneralPolynomial };

// Real polynomial phase germ with f(0) = 0 and an isolated critical point
// at the origin (enforced only for the tagged families).
struct PhaseGerm {
    Poly poly;
    int dim = 1;
    PhaseFamily family = PhaseFamily::GeneralPolynomial;

    // Monomial1D: f = eps * x^k
    int k = 0;
    int eps = 1;
    // BrieskornPham: f = bp_eps[0] x^bp_a[0] + bp_eps[1] y^bp_a[1]
    std::array<int, 2> bp_a{0, 0};
    std::array<int, 2> bp_eps{1, 1};

    static PhaseGerm from_poly(const Poly& p);
    static PhaseGerm parse(const std::string& text) { return from_poly(Poly::parse(text)); }

    double eval(double x, double y = 0.0) const { return poly.eval(x, y); }
    std::array<double, 2> gradient(double x, double y = 0.0) const { return poly.gradient(x, y); }

    // min(1/4, half the max of |f| over the ball of given radius)
    double default_s0(double ball_radius) const;
};

// Density g = m(x) * cutoff(|x| / radius): quintic smoothstep, identically 1
// on |x| <= radius/2 and 0 beyond |x| >= radius.
struct TestDensity {
    Poly m;
    double radius = 1.0;

    static double cutoff(double t);  // t = |x| / radius
    double eval(double x, double y = 0.0) const;
    bool plateau_contains(double x, double y = 0.0) const;  // inside |x| <= radius/2
};

// One connected component of ball - f^{-1}(0). The descriptor is a sign
// word over the separating family: (x) when dim == 1, (x, y, f) when dim == 2,
// with '*' marking coordinates whose sign is not constant on the component.
struct Component {
    std::string descriptor;
    std::array<double, 2> representative{0.0, 0.0};
    std::vector<std::string> cells;  // full sign words merged into this component
};

struct ComponentSet {
    PhaseGerm phase;
    double ball_radius = 1.0;
    std::vector<Component> components;
    std::unordered_map<std::string, int> cell_index;  // full sign word -> component

    int size() const { return static_cast<int>(components.size()); }
    // -1 when the point sits on a wall or outside every known cell
    int component_of(double x, double y = 0.0) const;
};

// Deterministic sampling enumeration; descriptors are stable in n_samples.
ComponentSet enumerate_components(const PhaseGerm& phase, double ball_radius,
                                  int n_samples = 10000, std::uint64_t seed = 20140907);

// Complex coefficient per component, aligned with ComponentSet::components.
struct RegionCombination {
    std::vector<Complex> coeffs;

    bool all_zero() const;
    Complex coeff_at(const ComponentSet& cs, double x, double y = 0.0) const;
};

// "all:1", "+:1,-:-1", "+*+:0.5+0.5i"; descriptors must match enumerate output
RegionCombination parse_region(const ComponentSet& cs, const std::string& text);
std::string format_region(const ComponentSet& cs, const RegionCombination& region);

// True iff across every wall of f^{-1}(0) - {0} the two adjacent components
// carry equal coefficients, so the boundary current lives at the origin only.
bool boundary_at_origin(const ComponentSet& cs, const RegionCombination& region);

}  // namespace oscint
