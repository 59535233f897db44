#include "oscint/milnor.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <sstream>

#include "oscint/errors.hpp"

namespace oscint {

namespace {

// polynomial long division helpers on ascending int64 coefficients
std::vector<std::int64_t> poly_divide_exact(std::vector<std::int64_t> num,
                                            const std::vector<std::int64_t>& den) {
    // den monic up to sign of leading coefficient +-1
    std::vector<std::int64_t> q(num.size() - den.size() + 1, 0);
    std::int64_t lead = den.back();
    for (std::size_t i = q.size(); i-- > 0;) {
        std::int64_t c = num[i + den.size() - 1] / lead;
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (std::int64_t v : num)
        if (v != 0) throw Error("cyclotomic division left a remainder");
    return q;
}

std::map<int, std::vector<std::int64_t>>& phi_cache() {
    static std::map<int, std::vector<std::int64_t>> cache;
    return cache;
}
std::mutex phi_mutex;

}  // namespace

std::vector<std::int64_t> cyclotomic_poly(int N) {
    if (N < 1) throw DomainError("cyclotomic order must be positive");
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto& cache = phi_cache();
    auto compute = [&](auto&& self, int n) -> const std::vector<std::int64_t>& {
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        // X^n - 1 divided by the product of Phi_d over proper divisors d
        std::vector<std::int64_t> num(n + 1, 0);
        num[0] = -1;
        num[n] = 1;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) num = poly_divide_exact(std::move(num), self(self, d));
        return cache.emplace(n, std::move(num)).first->second;
    };
    return compute(compute, N);
}

Cyclotomic::Cyclotomic(int N) : N_(N) {
    if (N < 1) throw DomainError("cyclotomic order must be positive");
    c_.assign(cyclotomic_poly(N).size() - 1, Rat(0));
}

Cyclotomic Cyclotomic::from_rat(int N, const Rat& r) {
    Cyclotomic out(N);
    out.c_[0] = r;
    return out;
}

Cyclotomic Cyclotomic::zeta(int N, std::int64_t power) {
    Cyclotomic out(N);
    std::int64_t p = ((power % N) + N) % N;
    // reduce zeta^p against the minimal polynomial by repeated folding
    std::vector<Rat> raw(static_cast<std::size_t>(p) + 1, Rat(0));
    raw[p] = Rat(1);
    const std::vector<std::int64_t> phi = cyclotomic_poly(N);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = raw.size(); i-- > deg;) {
        Rat top = raw[i];
        if (top == Rat(0)) continue;
        raw[i] = Rat(0);
        for (std::size_t j = 0; j < deg; ++j)
            raw[i - deg + j] = raw[i - deg + j] - top * Rat(phi[j]);
    }
    for (std::size_t j = 0; j < deg && j < raw.size(); ++j) out.c_[j] = raw[j];
    return out;
}

Cyclotomic Cyclotomic::gaussian(int N, const Rat& re, const Rat& im) {
    if (N % 4 != 0) throw DomainError("gaussian coefficients need 4 | N");
    Cyclotomic out = from_rat(N, re);
    Cyclotomic iu = zeta(N, N / 4);
    iu.scale(im);
    return out + iu;
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rat& r) { return r == Rat(0); });
}

bool Cyclotomic::is_rational(Rat* value) const {
    for (std::size_t j = 1; j < c_.size(); ++j)
        if (!(c_[j] == Rat(0))) return false;
    if (value) *value = c_.empty() ? Rat(0) : c_[0];
    return true;
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
}

namespace {
void require_same_field(int a, int b) {
    if (a != b) throw DomainError("cyclotomic operands live in different fields");
}
}  // namespace

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    require_same_field(N_, o.N_);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = c_[j] + o.c_[j];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
    require_same_field(N_, o.N_);
    for (std::size_t j = 0; j < c_.size(); ++j) c_[j] = c_[j] - o.c_[j];
    return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    require_same_field(a.N_, b.N_);
    const std::size_t deg = a.c_.size();
    std::vector<Rat> raw(2 * deg, Rat(0));
    for (std::size_t i = 0; i < deg; ++i) {
        if (a.c_[i] == Rat(0)) continue;
        for (std::size_t j = 0; j < deg; ++j) raw[i + j] = raw[i + j] + a.c_[i] * b.c_[j];
    }
    const std::vector<std::int64_t> phi = cyclotomic_poly(a.N_);
    for (std::size_t i = raw.size(); i-- > deg;) {
        Rat top = raw[i];
        if (top == Rat(0)) continue;
        raw[i] = Rat(0);
        for (std::size_t j = 0; j < deg; ++j)
            raw[i - deg + j] = raw[i - deg + j] - top * Rat(phi[j]);
    }
    Cyclotomic out(a.N_);
    for (std::size_t j = 0; j < deg; ++j) out.c_[j] = raw[j];
    return out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.N_ == b.N_ && a.c_ == b.c_;
}

Cyclotomic& Cyclotomic::scale(const Rat& r) {
    for (auto& v : c_) v = v * r;
    return *this;
}

Complex Cyclotomic::embed() const {
    Complex z = std::exp(Complex(0.0, 2.0 * M_PI / N_));
    Complex acc{0.0, 0.0};
    for (std::size_t j = c_.size(); j-- > 0;) acc = acc * z + Complex(c_[j].to_double(), 0.0);
    return acc;
}

std::string Cyclotomic::str() const {
    std::ostringstream out;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (c_[j] == Rat(0)) continue;
        Rat v = c_[j];
        if (first) {
            if (v.num() < 0) out << "-";
        } else {
            out << (v.num() < 0 ? " - " : " + ");
        }
        Rat av = abs(v);
        bool unit = av == Rat(1) && j > 0;
        if (!unit) out << av.str();
        if (j > 0) {
            if (!unit) out << "*";
            out << "z";
            if (j > 1) out << "^" << j;
        }
        first = false;
    }
    if (first) return "0";
    return out.str();
}

bool ExactRegion::all_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const std::pair<Rat, Rat>& c) {
        return c.first == Rat(0) && c.second == Rat(0);
    });
}

RegionCombination ExactRegion::to_complex() const {
    RegionCombination out;
    for (const auto& [re, im] : coeffs) out.coeffs.push_back({re.to_double(), im.to_double()});
    return out;
}

ExactRegion parse_region_exact(const ComponentSet& cs, const std::string& text) {
    ExactRegion region;
    region.coeffs.assign(cs.components.size(), {Rat(0), Rat(0)});
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        if (!item.empty()) {
            std::size_t colon = item.rfind(':');
            if (colon == std::string::npos) throw ParseError("expected 'descriptor:coefficient'", pos);
            std::string desc = item.substr(0, colon);
            auto [re, im] = parse_gaussian(item.substr(colon + 1));
            auto bump = [&](int ci) {
                region.coeffs[ci].first = region.coeffs[ci].first + re;
                region.coeffs[ci].second = region.coeffs[ci].second + im;
            };
            if (desc == "all") {
                for (int ci = 0; ci < cs.size(); ++ci) bump(ci);
            } else {
                bool found = false;
                for (int ci = 0; ci < cs.size(); ++ci)
                    if (cs.components[ci].descriptor == desc) {
                        bump(ci);
                        found = true;
                        break;
                    }
                if (!found) throw ParseError("unknown component descriptor '" + desc + "'", pos);
            }
        }
        pos = comma + 1;
    }
    return region;
}

SpectralCycle SpectralCycle::zero(int k, int eps) {
    if (k < 2) throw DomainError("model fiber needs k >= 2");
    SpectralCycle c;
    c.k = k;
    c.eps = eps;
    c.coord.assign(k, Cyclotomic(std::lcm(4, k)));
    return c;
}

bool SpectralCycle::is_zero() const {
    return std::all_of(coord.begin(), coord.end(), [](const Cyclotomic& c) { return c.is_zero(); });
}

SpectralCycle SpectralCycle::operator-() const {
    SpectralCycle out = *this;
    for (auto& c : out.coord) c = -c;
    return out;
}

namespace {
void require_same_fiber(const SpectralCycle& a, const SpectralCycle& b) {
    if (a.k != b.k || a.eps != b.eps) throw DomainError("cycles live on different fibers");
}
}  // namespace

SpectralCycle& SpectralCycle::operator+=(const SpectralCycle& o) {
    require_same_fiber(*this, o);
    for (int j = 0; j < k; ++j) coord[j] += o.coord[j];
    return *this;
}

SpectralCycle& SpectralCycle::operator-=(const SpectralCycle& o) {
    require_same_fiber(*this, o);
    for (int j = 0; j < k; ++j) coord[j] -= o.coord[j];
    return *this;
}

bool operator==(const SpectralCycle& a, const SpectralCycle& b) {
    return a.k == b.k && a.eps == b.eps && a.coord == b.coord;
}

SpectralCycle& SpectralCycle::scale(const Cyclotomic& c) {
    for (auto& v : coord) v = v * c;
    return *this;
}

std::vector<Complex> SpectralCycle::embed() const {
    std::vector<Complex> out;
    for (const auto& c : coord) out.push_back(c.embed());
    return out;
}

std::string SpectralCycle::str() const {
    std::ostringstream out;
    out << "(";
    for (int j = 0; j < k; ++j) out << (j ? ", " : "") << coord[j].str();
    out << ")";
    return out.str();
}

SpectralCycle monodromy(const SpectralCycle& c) { return monodromy_power(c, 1); }

SpectralCycle monodromy_power(const SpectralCycle& c, std::int64_t t) {
    SpectralCycle out = c;
    std::int64_t shift = ((t % c.k) + c.k) % c.k;
    for (int j = 0; j < c.k; ++j) out.coord[(j + shift) % c.k] = c.coord[j];
    return out;
}

SpectralCycle variation(const SpectralCycle& c) { return monodromy(c) - c; }

SpectralCycle canonical(const SpectralCycle& c) { return c; }

SpectralCycle gamma_cycle(const PhaseGerm& phase, const ComponentSet& cs, const ExactRegion& region) {
    if (phase.family != PhaseFamily::Monomial1D)
        throw UnsupportedFamily("model cycles only exist for the 1d monomial family");
    if (static_cast<int>(region.coeffs.size()) != cs.size())
        throw DomainError("region size does not match the component set");
    const int k = phase.k;
    const int N = std::lcm(4, k);
    auto coeff_of = [&](const char* desc) {
        auto it = cs.cell_index.find(desc);
        if (it == cs.cell_index.end()) return Cyclotomic(N);
        const auto& [re, im] = region.coeffs[it->second];
        return Cyclotomic::gaussian(N, re, im);
    };
    const Cyclotomic a_pos = coeff_of("+"), a_neg = coeff_of("-");

    SpectralCycle g = SpectralCycle::zero(k, phase.eps);
    // orientation by sign f'; negative fiber transported through the lower
    // half-circle, contributing with a minus sign
    if (phase.eps > 0) {
        g.coord[0] += a_pos;  // x = +rho on the positive fiber, f' > 0
        if (k % 2 == 0)
            g.coord[k / 2] -= a_neg;  // x = -rho, f' < 0
        else
            g.coord[(k + 1) / 2] -= a_neg;  // x = -rho on the negative fiber, f' > 0
    } else {
        g.coord[1] += a_pos;  // x = +rho on the negative fiber, f' < 0
        if (k % 2 == 0)
            g.coord[(k / 2 + 1) % k] -= a_neg;  // x = -rho on the negative fiber, f' > 0
        else
            g.coord[(k + 1) / 2] -= a_neg;  // x = -rho on the positive fiber, f' < 0
    }
    return g;
}

SpectralCycle gamma_hat(const PhaseGerm& phase, const ComponentSet& cs, const ExactRegion& region) {
    if (!boundary_at_origin(cs, region.to_complex()))
        throw BoundaryNotAtOrigin("region boundary does not reduce to the origin");
    return gamma_cycle(phase, cs, region);
}

SpectralCycle eigencomponent(const SpectralCycle& c, int m) {
    const int k = c.k;
    const int N = std::lcm(4, k);
    SpectralCycle acc = SpectralCycle::zero(k, c.eps);
    for (int t = 0; t < k; ++t) {
        SpectralCycle term = monodromy_power(c, t);
        term.scale(Cyclotomic::zeta(N, static_cast<std::int64_t>(m) * t * (N / k)));
        acc += term;
    }
    Cyclotomic inv_k = Cyclotomic::from_rat(N, Rat(1, k));
    acc.scale(inv_k);
    return acc;
}

std::map<Rat, int> predict_pole_cosets(const PhaseGerm& phase, const ComponentSet& cs,
                                       const ExactRegion& region) {
    SpectralCycle g = gamma_cycle(phase, cs, region);
    SpectralCycle gh = gamma_hat(phase, cs, region);
    std::map<Rat, int> out;
    for (int m = 0; m < phase.k; ++m) {
        const SpectralCycle& base = m == 0 ? gh : g;
        out[Rat(m, phase.k)] = eigencomponent(base, m).is_zero() ? 0 : 1;
    }
    return out;
}

std::vector<std::vector<Rat>> theta_series(const std::vector<std::vector<Rat>>& M) {
    const std::size_t n = M.size();
    for (const auto& row : M)
        if (row.size() != n) throw DomainError("theta series needs a square matrix");
    auto mul = [&](const std::vector<std::vector<Rat>>& A, const std::vector<std::vector<Rat>>& B) {
        std::vector<std::vector<Rat>> C(n, std::vector<Rat>(n, Rat(0)));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (A[i][l] == Rat(0)) continue;
                for (std::size_t j = 0; j < n; ++j) C[i][j] = C[i][j] + A[i][l] * B[l][j];
            }
        return C;
    };
    std::vector<std::vector<Rat>> nil(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) nil[i][j] = M[i][j] - Rat(i == j ? 1 : 0);
    std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) out[i][i] = Rat(1);
    std::vector<std::vector<Rat>> pw = out;
    for (std::size_t kappa = 1; kappa <= n; ++kappa) {
        pw = mul(pw, nil);
        bool zero = true;
        for (const auto& row : pw)
            for (const auto& v : row) zero = zero && v == Rat(0);
        if (zero) return out;
        if (kappa == n) throw DomainError("theta series needs a unipotent matrix");
        Rat c = Rat(kappa % 2 ? -1 : 1, static_cast<std::int64_t>(kappa) + 1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] = out[i][j] + c * pw[i][j];
    }
    return out;
}

SpectralCycle theta_on_invariant(const SpectralCycle& c) {
    // semisimple monodromy: (T - 1) kills the invariant part, the series
    // truncates after its constant term
    return eigencomponent(c, 0);
}

std::vector<Rat> pham_spectrum(const std::vector<int>& exponents) {
    if (exponents.empty()) throw DomainError("spectrum needs at least one exponent");
    for (int a : exponents)
        if (a < 2) throw DomainError("spectrum exponents must be >= 2");
    std::set<Rat> cosets;
    std::vector<int> j(exponents.size(), 1);
    while (true) {
        Rat total(0);
        for (std::size_t i = 0; i < exponents.size(); ++i)
            total = total + Rat(j[i], exponents[i]);
        cosets.insert(total.frac());
        std::size_t i = 0;
        for (; i < j.size(); ++i) {
            if (++j[i] <= exponents[i] - 1) break;
            j[i] = 1;
        }
        if (i == j.size()) break;
    }
    return {cosets.begin(), cosets.end()};
}

ExponentLattice spectrum_lattice(const PhaseGerm& phase, int nu_max, int max_log_power) {
    std::vector<int> exps;
    if (phase.family == PhaseFamily::Monomial1D)
        exps = {phase.k};
    else if (phase.family == PhaseFamily::BrieskornPham)
        exps = {phase.bp_a[0], phase.bp_a[1]};
    else
        throw UnsupportedFamily("candidate cosets known for monomial and two-term diagonal phases");
    std::vector<Rat> cosets = pham_spectrum(exps);
    if (std::find(cosets.begin(), cosets.end(), Rat(0)) == cosets.end()) cosets.push_back(Rat(0));
    return ExponentLattice::make(std::move(cosets), nu_max, max_log_power);
}

}  // namespace oscint
