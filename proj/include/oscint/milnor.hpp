#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "oscint/expansion.hpp"
#include "oscint/model.hpp"
#include "oscint/num.hpp"
#include "oscint/rat.hpp"

namespace oscint {

// Coefficients of the N-th cyclotomic polynomial, ascending, exact.
std::vector<std::int64_t> cyclotomic_poly(int N);

// Element of Q(zeta_N), zeta_N = exp(2 pi i / N), reduced modulo Phi_N.
// All binary operations require matching N.
class Cyclotomic {
  public:
    Cyclotomic() = default;
    explicit Cyclotomic(int N);  // zero
    static Cyclotomic from_rat(int N, const Rat& r);
    static Cyclotomic gaussian(int N, const Rat& re, const Rat& im);  // needs 4 | N
    static Cyclotomic zeta(int N, std::int64_t power);

    int order() const { return N_; }
    int degree() const { return static_cast<int>(c_.size()); }
    const std::vector<Rat>& coords() const { return c_; }
    bool is_zero() const;
    bool is_rational(Rat* value = nullptr) const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    Cyclotomic& scale(const Rat& r);

    Complex embed() const;
    std::string str() const;  // polynomial in z = zeta_N

  private:
    int N_ = 1;
    std::vector<Rat> c_;  // size deg Phi_N, zero-padded
};

// Exact complex coefficients per component, parallel to RegionCombination.
struct ExactRegion {
    std::vector<std::pair<Rat, Rat>> coeffs;  // (re, im)

    bool all_zero() const;
    RegionCombination to_complex() const;
};

// Same grammar as parse_region, but coefficients must be Gaussian rationals.
ExactRegion parse_region_exact(const ComponentSet& cs, const std::string& text);

// Chain on the model fiber of eps * x^k at a small positive value. The k
// points are labeled p_0..p_{k-1} so that the counterclockwise monodromy is
// the cyclic shift p_j -> p_{j+1}; coordinates live in Q(zeta_N), N = lcm(4,k).
struct SpectralCycle {
    int k = 1;
    int eps = 1;
    std::vector<Cyclotomic> coord;

    static SpectralCycle zero(int k, int eps);
    int field_order() const { return std::lcm(4, k); }
    bool is_zero() const;

    SpectralCycle operator-() const;
    SpectralCycle& operator+=(const SpectralCycle& o);
    SpectralCycle& operator-=(const SpectralCycle& o);
    friend SpectralCycle operator+(SpectralCycle a, const SpectralCycle& b) { return a += b; }
    friend SpectralCycle operator-(SpectralCycle a, const SpectralCycle& b) { return a -= b; }
    friend bool operator==(const SpectralCycle& a, const SpectralCycle& b);
    SpectralCycle& scale(const Cyclotomic& c);

    std::vector<Complex> embed() const;
    std::string str() const;
};

// T: p_j -> p_{j+1} extended linearly; power accepts negatives.
SpectralCycle monodromy(const SpectralCycle& c);
SpectralCycle monodromy_power(const SpectralCycle& c, std::int64_t t);

// (T - 1) c
SpectralCycle variation(const SpectralCycle& c);

// Compact cycle reread as a relative one; coefficient-wise on this model,
// where the fiber is finite and every chain is already compact.
SpectralCycle canonical(const SpectralCycle& c);

// Class of the region on the reference fiber: real points of both the
// positive and the negative fiber, oriented by sign f', the negative fiber
// carried over through the lower half-circle. 1d monomial phases only.
SpectralCycle gamma_cycle(const PhaseGerm& phase, const ComponentSet& cs, const ExactRegion& region);

// Compactly-supported variant; defined when the region's boundary current
// sits at the origin (always true on a 1d ball), and then equal to
// gamma_cycle coefficient-wise. Throws BoundaryNotAtOrigin otherwise.
SpectralCycle gamma_hat(const PhaseGerm& phase, const ComponentSet& cs, const ExactRegion& region);

// Projection onto the T-eigenvalue exp(-2 pi i m / k) subspace,
// (1/k) sum_t zeta_k^{m t} T^t. Exact.
SpectralCycle eigencomponent(const SpectralCycle& c, int m);

// Coset u = m/k -> predicted pole order (0 or 1, the monodromy being
// semisimple here): u != 0 from the eigencomponents of gamma_cycle, u = 0
// from the invariant part of gamma_hat.
std::map<Rat, int> predict_pole_cosets(const PhaseGerm& phase, const ComponentSet& cs,
                                       const ExactRegion& region);

// sum_{kappa} (-1)^kappa / (kappa+1) (M - I)^kappa on a unipotent rational
// matrix (throws DomainError when (M - I) is not nilpotent).
std::vector<std::vector<Rat>> theta_series(const std::vector<std::vector<Rat>>& M);

// Theta on the invariant eigencomponent: the identity for semisimple T.
SpectralCycle theta_on_invariant(const SpectralCycle& c);

// Fractional parts of sum_i j_i / a_i, 1 <= j_i <= a_i - 1, sorted unique.
std::vector<Rat> pham_spectrum(const std::vector<int>& exponents);

// Candidate cosets for continuation: the spectrum plus the integer coset.
ExponentLattice spectrum_lattice(const PhaseGerm& phase, int nu_max, int max_log_power);

}  // namespace oscint
