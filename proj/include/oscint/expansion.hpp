#pragma once

#include <string>
#include <vector>

#include "oscint/num.hpp"
#include "oscint/rat.hpp"

namespace oscint {

// Candidate exponent arithmetic: poles may sit at lambda = -(u + nu) for
// cosets u in [0,1) and nu = 0..nu_max, with log powers j <= max_log_power.
struct ExponentLattice {
    std::vector<Rat> cosets;  // sorted, unique, in [0,1)
    int nu_max = 4;
    int max_log_power = 0;

    static ExponentLattice make(std::vector<Rat> cosets, int nu_max, int max_log_power);

    bool contains_coset(const Rat& u) const;
    // all admissible r = u + nu > 0, sorted ascending
    std::vector<Rat> exponents() const;
    Rat max_exponent() const;
    std::string str() const;
};

// One asymptotic term on one side of 0.
//
// Convention (fixed artifact-wide): the terms describe the Mellin-ready
// profile phi(s) = s * J(s) of the attached object,
//     phi(sigma t) ~ sum c^sigma_{r,j} t^r (ln t)^j,  t -> 0+,
// with physical t and real ln. Equivalently, the density itself satisfies
// J(t) ~ sum c^+ t^{r-1} ln^j t and J(-t) ~ -sum c^- t^{r-1} ln^j t;
// the sign flip on the negative side is what makes a globally smooth phi
// carry c^+_{m} = (-1)^m c^-_{m} and produce no poles at -m.
struct ExpTerm {
    Rat r;       // > 0
    int j = 0;   // log power
    Complex c{0.0, 0.0};
    double sigma = 0.0;  // 1-sigma per component when fitted, 0 when exact
};

struct AsymptoticExpansion {
    std::vector<ExpTerm> pos, neg;

    bool empty() const { return pos.empty() && neg.empty(); }
    void add(int side, const Rat& r, int j, const Complex& c, double sigma = 0.0);
    // merge duplicate (r, j), drop exact zeros, sort by (r, j)
    void canonicalize();
    int max_log_power() const;
    Rat max_exponent() const;  // 0 when empty
    // value of sum c t^r ln^j t on the requested side at t > 0
    Complex eval_side(int side, double t) const;
    std::string str() const;
};

// Principal parts of the continued transform near lambda = location:
//     F(lambda) ~ sum_{l=1..order} principal[l-1] / (lambda - location)^l.
struct Pole {
    Rat location;  // negative rational, location = -r
    int order = 0;
    std::vector<Complex> principal;
};

// Continuation output. Principal parts refer to the bracket
//     F(lambda) = int (f/s0)^lambda ... normalized by s0; when
// prefactor_included is true every coefficient already carries 1/(i pi).
struct PoleTable {
    double s0 = 1.0;
    bool prefactor_included = false;
    std::vector<Pole> poles;

    const Pole* find(const Rat& location) const;
    Complex residue_at(const Rat& location) const;  // 0 when absent
    int max_order() const;

    // rescale principal parts to the unnormalized kernel f^lambda
    // (multiplication by s0^lambda, re-expanded around each pole)
    PoleTable to_unnormalized() const;

    // drop coefficients below the threshold; relative thresholds scale by
    // the largest principal-part magnitude in the table
    void apply_threshold(double threshold, bool absolute);

    std::string to_json() const;
    static PoleTable from_json(const std::string& text);
};

}  // namespace oscint
