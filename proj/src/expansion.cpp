#include "oscint/expansion.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "oscint/errors.hpp"

namespace oscint {

using nlohmann::json;

ExponentLattice ExponentLattice::make(std::vector<Rat> cosets, int nu_max, int max_log_power) {
    for (auto& u : cosets) {
        if (u < Rat(0) || u >= Rat(1)) throw DomainError("lattice coset outside [0,1)");
    }
    std::sort(cosets.begin(), cosets.end());
    cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
    if (cosets.empty()) throw DomainError("lattice needs at least one coset");
    if (nu_max < 0) throw DomainError("nu_max must be nonnegative");
    ExponentLattice lat;
    lat.cosets = std::move(cosets);
    lat.nu_max = nu_max;
    lat.max_log_power = max_log_power;
    return lat;
}

bool ExponentLattice::contains_coset(const Rat& u) const {
    return std::find(cosets.begin(), cosets.end(), u) != cosets.end();
}

std::vector<Rat> ExponentLattice::exponents() const {
    std::vector<Rat> out;
    for (const auto& u : cosets)
        for (int nu = 0; nu <= nu_max; ++nu) {
            Rat r = u + Rat(nu);
            if (r > Rat(0)) out.push_back(r);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Rat ExponentLattice::max_exponent() const {
    Rat m(0);
    for (const auto& u : cosets) m = std::max(m, u + Rat(nu_max));
    return m;
}

std::string ExponentLattice::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < cosets.size(); ++i) {
        if (i) out += ",";
        out += cosets[i].str();
    }
    out += "} + 0..";
    out += std::to_string(nu_max);
    return out;
}

void AsymptoticExpansion::add(int side, const Rat& r, int j, const Complex& c, double sigma) {
    if (!(r > Rat(0))) throw DomainError("expansion exponent must be positive");
    if (j < 0) throw DomainError("log power must be nonnegative");
    (side >= 0 ? pos : neg).push_back({r, j, c, sigma});
}

void AsymptoticExpansion::canonicalize() {
    auto fold = [](std::vector<ExpTerm>& v) {
        std::sort(v.begin(), v.end(), [](const ExpTerm& a, const ExpTerm& b) {
            if (a.r != b.r) return a.r < b.r;
            return a.j < b.j;
        });
        std::vector<ExpTerm> out;
        for (const auto& t : v) {
            if (!out.empty() && out.back().r == t.r && out.back().j == t.j) {
                out.back().c += t.c;
                out.back().sigma = std::hypot(out.back().sigma, t.sigma);
            } else {
                out.push_back(t);
            }
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [](const ExpTerm& t) { return t.c == Complex(0.0, 0.0); }),
                  out.end());
        v = std::move(out);
    };
    fold(pos);
    fold(neg);
}

int AsymptoticExpansion::max_log_power() const {
    int m = 0;
    for (const auto& t : pos) m = std::max(m, t.j);
    for (const auto& t : neg) m = std::max(m, t.j);
    return m;
}

Rat AsymptoticExpansion::max_exponent() const {
    Rat m(0);
    for (const auto& t : pos) m = std::max(m, t.r);
    for (const auto& t : neg) m = std::max(m, t.r);
    return m;
}

Complex AsymptoticExpansion::eval_side(int side, double t) const {
    const auto& v = side >= 0 ? pos : neg;
    Complex acc{0.0, 0.0};
    double lt = std::log(t);
    for (const auto& term : v)
        acc += term.c * std::pow(t, term.r.to_double()) * std::pow(lt, term.j);
    return acc;
}

std::string AsymptoticExpansion::str() const {
    auto fmt = [](const std::vector<ExpTerm>& v) {
        std::string s;
        for (const auto& t : v) {
            if (!s.empty()) s += " + ";
            s += "(" + format_complex(t.c) + ") t^" + t.r.str();
            if (t.j > 0) s += " ln^" + std::to_string(t.j) + " t";
        }
        return s.empty() ? std::string("0") : s;
    };
    return "+: " + fmt(pos) + " | -: " + fmt(neg);
}

const Pole* PoleTable::find(const Rat& location) const {
    for (const auto& p : poles)
        if (p.location == location) return &p;
    return nullptr;
}

Complex PoleTable::residue_at(const Rat& location) const {
    const Pole* p = find(location);
    if (!p || p->principal.empty()) return {0.0, 0.0};
    return p->principal[0];
}

int PoleTable::max_order() const {
    int m = 0;
    for (const auto& p : poles) m = std::max(m, p.order);
    return m;
}

PoleTable PoleTable::to_unnormalized() const {
    // F_unnorm(lambda) = s0^lambda F(lambda); around lambda = -r this is
    // s0^{-r} exp(mu ln s0) with mu = lambda + r, so
    //   p'_l = s0^{-r} sum_{m >= l} p_m (ln s0)^{m-l} / (m-l)!
    PoleTable out = *this;
    const double L = std::log(s0);
    for (auto& pole : out.poles) {
        double r = -pole.location.to_double();
        double scale = std::pow(s0, -r);
        std::vector<Complex> np(pole.principal.size());
        for (std::size_t l = 1; l <= pole.principal.size(); ++l) {
            Complex acc{0.0, 0.0};
            double fact = 1.0, lp = 1.0;
            for (std::size_t m = l; m <= pole.principal.size(); ++m) {
                acc += pole.principal[m - 1] * lp / fact;
                lp *= L;
                fact *= static_cast<double>(m - l + 1);
            }
            np[l - 1] = scale * acc;
        }
        pole.principal = std::move(np);
    }
    out.s0 = 1.0;  // now relative to the unit scale; idempotent
    return out;
}

void PoleTable::apply_threshold(double threshold, bool absolute) {
    double scale = 0.0;
    for (const auto& p : poles)
        for (const auto& c : p.principal) scale = std::max(scale, std::abs(c));
    double cut = absolute ? threshold : threshold * scale;
    for (auto& p : poles) {
        for (auto& c : p.principal)
            if (std::abs(c) <= cut) c = Complex(0.0, 0.0);
        while (!p.principal.empty() && p.principal.back() == Complex(0.0, 0.0)) p.principal.pop_back();
        p.order = static_cast<int>(p.principal.size());
    }
    poles.erase(std::remove_if(poles.begin(), poles.end(),
                               [](const Pole& p) { return p.order == 0; }),
                poles.end());
}

std::string PoleTable::to_json() const {
    json out;
    out["s0"] = s0;
    out["poles"] = json::array();
    for (const auto& p : poles) {
        json jp;
        jp["location"] = p.location.str();
        jp["order"] = p.order;
        jp["principal_parts"] = json::array();
        for (const auto& c : p.principal) jp["principal_parts"].push_back({c.real(), c.imag()});
        jp["prefactor_included"] = prefactor_included;
        out["poles"].push_back(jp);
    }
    return out.dump(2);
}

PoleTable PoleTable::from_json(const std::string& text) {
    json in = json::parse(text);
    PoleTable out;
    out.s0 = in.value("s0", 1.0);
    for (const auto& jp : in.at("poles")) {
        Pole p;
        p.location = Rat::parse(jp.at("location").get<std::string>());
        p.order = jp.at("order").get<int>();
        for (const auto& pair : jp.at("principal_parts"))
            p.principal.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        out.prefactor_included = jp.value("prefactor_included", false);
        out.poles.push_back(std::move(p));
    }
    return out;
}

}  // namespace oscint
