#include "oscint/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "oscint/errors.hpp"

namespace oscint {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

Rat parse_number(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])) || c.s[c.i] == '.')) ++c.i;
    if (c.i == start) throw ParseError("expected number", start);
    return Rat::parse(c.s.substr(start, c.i - start));
}

int parse_exponent(Cursor& c) {
    c.skip_ws();
    std::size_t start = c.i;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) ++c.i;
    if (c.i == start) throw ParseError("expected integer exponent", start);
    long v = std::stol(c.s.substr(start, c.i - start));
    if (v < 0 || v > 64) throw ParseError("exponent out of range", start);
    return static_cast<int>(v);
}

// factor := number | ('x'|'y') ['^' int]
void parse_factor(Cursor& c, Rat& coeff, int& ex, int& ey) {
    char ch = c.peek();
    if (ch == 'x' || ch == 'y') {
        ++c.i;
        int e = 1;
        if (c.peek() == '^') {
            ++c.i;
            e = parse_exponent(c);
        }
        (ch == 'x' ? ex : ey) += e;
        return;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        coeff *= parse_number(c);
        return;
    }
    throw ParseError("expected variable or number", c.i);
}

double ipow(double x, int n) {
    double r = 1.0;
    while (n > 0) {
        if (n & 1) r *= x;
        x *= x;
        n >>= 1;
    }
    return r;
}

}  // namespace

Poly Poly::parse(const std::string& text) {
    Poly p;
    Cursor c{text};
    if (c.done()) throw ParseError("empty polynomial", 0);
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (!first) {
            throw ParseError("expected '+' or '-'", c.i);
        }
        Rat coeff(sign);
        int ex = 0, ey = 0;
        parse_factor(c, coeff, ex, ey);
        while (c.peek() == '*') {
            ++c.i;
            parse_factor(c, coeff, ex, ey);
        }
        if (!coeff.is_zero()) {
            auto key = std::make_pair(ex, ey);
            auto it = p.terms.find(key);
            Rat sum = (it == p.terms.end() ? Rat(0) : it->second) + coeff;
            if (sum.is_zero())
                p.terms.erase(key);
            else
                p.terms[key] = sum;
        }
        first = false;
    }
    return p;
}

int Poly::dim() const {
    for (const auto& [key, c] : terms)
        if (key.second > 0) return 2;
    return 1;
}

Rat Poly::coeff(int i, int j) const {
    auto it = terms.find({i, j});
    return it == terms.end() ? Rat(0) : it->second;
}

double Poly::eval(double x, double y) const {
    double acc = 0.0;
    for (const auto& [key, c] : terms)
        acc += c.to_double() * ipow(x, key.first) * ipow(y, key.second);
    return acc;
}

std::array<double, 2> Poly::gradient(double x, double y) const {
    std::array<double, 2> g{0.0, 0.0};
    for (const auto& [key, c] : terms) {
        double cv = c.to_double();
        if (key.first > 0)
            g[0] += cv * key.first * ipow(x, key.first - 1) * ipow(y, key.second);
        if (key.second > 0)
            g[1] += cv * key.second * ipow(x, key.first) * ipow(y, key.second - 1);
    }
    return g;
}

std::string Poly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [key, c] : terms) {
        Rat a = c;
        if (!out.empty()) {
            out += a.num() < 0 ? " - " : " + ";
            if (a.num() < 0) a = -a;
        } else if (a.num() < 0) {
            out += "-";
            a = -a;
        }
        std::string mono;
        if (key.first > 0) mono += key.first == 1 ? "x" : "x^" + std::to_string(key.first);
        if (key.second > 0) {
            if (!mono.empty()) mono += "*";
            mono += key.second == 1 ? "y" : "y^" + std::to_string(key.second);
        }
        if (mono.empty())
            out += a.str();
        else if (a == Rat(1))
            out += mono;
        else
            out += a.str() + "*" + mono;
    }
    return out;
}

PhaseGerm PhaseGerm::from_poly(const Poly& p) {
    if (p.is_zero()) throw DomainError("phase polynomial is zero");
    if (!p.coeff(0, 0).is_zero()) throw DomainError("phase must vanish at the origin");
    PhaseGerm g;
    g.poly = p;
    g.dim = p.dim();
    if (g.dim == 1 && p.terms.size() == 1) {
        const auto& [key, c] = *p.terms.begin();
        if (key.first >= 2 && (c == Rat(1) || c == Rat(-1))) {
            g.family = PhaseFamily::Monomial1D;
            g.k = key.first;
            g.eps = c == Rat(1) ? 1 : -1;
            return g;
        }
    }
    if (g.dim == 2 && p.terms.size() == 2) {
        Rat cx, cy;
        int ax = 0, ay = 0;
        bool shape_ok = true;
        for (const auto& [key, c] : p.terms) {
            if (key.first > 0 && key.second == 0) {
                ax = key.first;
                cx = c;
            } else if (key.second > 0 && key.first == 0) {
                ay = key.second;
                cy = c;
            } else {
                shape_ok = false;
            }
        }
        bool unit = (cx == Rat(1) || cx == Rat(-1)) && (cy == Rat(1) || cy == Rat(-1));
        if (shape_ok && ax >= 2 && ay >= 2 && unit) {
            g.family = PhaseFamily::BrieskornPham;
            g.bp_a = {ax, ay};
            g.bp_eps = {cx == Rat(1) ? 1 : -1, cy == Rat(1) ? 1 : -1};
            return g;
        }
    }
    g.family = PhaseFamily::GeneralPolynomial;
    return g;
}

double PhaseGerm::default_s0(double ball_radius) const {
    double fmax = 0.0;
    if (dim == 1) {
        for (int i = 0; i <= 2000; ++i) {
            double x = ball_radius * (2.0 * i / 2000.0 - 1.0);
            fmax = std::max(fmax, std::abs(eval(x)));
        }
    } else {
        // golden-angle spiral over the disk
        const double ga = M_PI * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < 8192; ++i) {
            double r = ball_radius * std::sqrt((i + 0.5) / 8192.0);
            double th = ga * i;
            fmax = std::max(fmax, std::abs(eval(r * std::cos(th), r * std::sin(th))));
        }
    }
    if (fmax <= 0.0) throw DomainError("phase is zero on the ball");
    return std::min(0.25, 0.5 * fmax);
}

double TestDensity::cutoff(double t) {
    t = std::abs(t);
    if (t <= 0.5) return 1.0;
    if (t >= 1.0) return 0.0;
    double y = 2.0 * t - 1.0;
    return 1.0 - y * y * y * (10.0 + y * (-15.0 + 6.0 * y));
}

double TestDensity::eval(double x, double y) const {
    double rho = std::sqrt(x * x + y * y);
    double b = cutoff(rho / radius);
    if (b == 0.0) return 0.0;
    return m.eval(x, y) * b;
}

bool TestDensity::plateau_contains(double x, double y) const {
    return x * x + y * y <= 0.25 * radius * radius;
}

namespace {

char sign_char(double v) { return v >= 0.0 ? '+' : '-'; }

int descriptor_rank(char c) {
    switch (c) {
        case '+': return 0;
        case '-': return 1;
        default: return 2;
    }
}

bool descriptor_less(const std::string& a, const std::string& b) {
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
        int ra = descriptor_rank(a[i]), rb = descriptor_rank(b[i]);
        if (ra != rb) return ra < rb;
    }
    return a.size() < b.size();
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

double uniform01(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

int ComponentSet::component_of(double x, double y) const {
    std::string cell;
    if (phase.dim == 1) {
        if (x == 0.0) return -1;
        cell = std::string(1, sign_char(x));
        // zero is attached to '+' by sign_char; exclude it explicitly above
    } else {
        double f = phase.eval(x, y);
        if (x == 0.0 || y == 0.0 || f == 0.0) return -1;
        cell = {sign_char(x), sign_char(y), sign_char(f)};
    }
    auto it = cell_index.find(cell);
    return it == cell_index.end() ? -1 : it->second;
}

ComponentSet enumerate_components(const PhaseGerm& phase, double ball_radius,
                                  int n_samples, std::uint64_t seed) {
    if (phase.family == PhaseFamily::GeneralPolynomial)
        throw UnsupportedFamily("component enumeration supports monomial and two-term diagonal phases");
    ComponentSet cs;
    cs.phase = phase;
    cs.ball_radius = ball_radius;

    if (phase.dim == 1) {
        cs.components.push_back({"+", {0.5 * ball_radius, 0.0}, {"+"}});
        cs.components.push_back({"-", {-0.5 * ball_radius, 0.0}, {"-"}});
        cs.cell_index["+"] = 0;
        cs.cell_index["-"] = 1;
        return cs;
    }

    const double R = ball_radius;
    const double margin_xy = 1e-3 * R;
    std::uint64_t rng = seed;

    // pass 1: scale of f over the ball
    double f_scale = 0.0;
    for (int i = 0; i < 2048; ++i) {
        double r = R * std::sqrt(uniform01(rng));
        double th = 2.0 * M_PI * uniform01(rng);
        f_scale = std::max(f_scale, std::abs(phase.eval(r * std::cos(th), r * std::sin(th))));
    }
    const double margin_f = 1e-6 * std::max(f_scale, 1e-300);

    // pass 2: occupied sign cells with representatives
    rng = seed ^ 0x5bf0a8f1ull;
    std::map<std::string, std::array<double, 2>> cells;
    for (int i = 0; i < n_samples; ++i) {
        double r = R * std::sqrt(uniform01(rng));
        double th = 2.0 * M_PI * uniform01(rng);
        double x = r * std::cos(th), y = r * std::sin(th);
        double f = phase.eval(x, y);
        if (std::abs(x) < margin_xy || std::abs(y) < margin_xy || std::abs(f) < margin_f) continue;
        std::string w = {sign_char(x), sign_char(y), sign_char(f)};
        cells.emplace(w, std::array<double, 2>{x, y});
    }

    std::vector<std::string> words;
    words.reserve(cells.size());
    for (const auto& [w, rep] : cells) words.push_back(w);
    std::map<std::string, int> word_id;
    for (std::size_t i = 0; i < words.size(); ++i) word_id[words[i]] = static_cast<int>(i);

    // merge across the x = 0 and y = 0 walls where f keeps its sign
    UnionFind uf(static_cast<int>(words.size()));
    const int wall_grid = 2001;
    const double probe = 2.0 * margin_xy;
    for (int wall = 0; wall < 2; ++wall) {
        for (int i = 0; i < wall_grid; ++i) {
            double t = R * 0.98 * (2.0 * i / (wall_grid - 1.0) - 1.0);
            if (std::abs(t) < probe) continue;
            double x0 = wall == 0 ? 0.0 : t;
            double y0 = wall == 0 ? t : 0.0;
            double f0 = phase.eval(x0, y0);
            if (std::abs(f0) < 4.0 * margin_f) continue;
            double xa = wall == 0 ? probe : t, ya = wall == 0 ? t : probe;
            double xb = wall == 0 ? -probe : t, yb = wall == 0 ? t : -probe;
            double fa = phase.eval(xa, ya), fb = phase.eval(xb, yb);
            if (sign_char(fa) != sign_char(f0) || sign_char(fb) != sign_char(f0)) continue;
            std::string wa = {sign_char(xa), sign_char(ya), sign_char(f0)};
            std::string wb = {sign_char(xb), sign_char(yb), sign_char(f0)};
            auto ia = word_id.find(wa), ib = word_id.find(wb);
            if (ia != word_id.end() && ib != word_id.end()) uf.unite(ia->second, ib->second);
        }
    }

    // collect groups into components
    std::map<int, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < words.size(); ++i)
        groups[uf.find(static_cast<int>(i))].push_back(words[i]);

    for (auto& [root, ws] : groups) {
        std::sort(ws.begin(), ws.end(), descriptor_less);
        std::string desc(3, '?');
        for (int pos = 0; pos < 3; ++pos) {
            char c = ws[0][pos];
            for (const auto& w : ws)
                if (w[pos] != c) c = '*';
            desc[pos] = c;
        }
        Component comp;
        comp.descriptor = desc;
        comp.cells = ws;
        comp.representative = cells[ws[0]];
        cs.components.push_back(std::move(comp));
    }
    std::sort(cs.components.begin(), cs.components.end(),
              [](const Component& a, const Component& b) { return descriptor_less(a.descriptor, b.descriptor); });
    for (int ci = 0; ci < cs.size(); ++ci)
        for (const auto& w : cs.components[ci].cells) cs.cell_index[w] = ci;
    return cs;
}

bool RegionCombination::all_zero() const {
    for (const auto& c : coeffs)
        if (c != Complex(0.0, 0.0)) return false;
    return true;
}

Complex RegionCombination::coeff_at(const ComponentSet& cs, double x, double y) const {
    int ci = cs.component_of(x, y);
    if (ci < 0 || ci >= static_cast<int>(coeffs.size())) return {0.0, 0.0};
    return coeffs[ci];
}

RegionCombination parse_region(const ComponentSet& cs, const std::string& text) {
    RegionCombination region;
    region.coeffs.assign(cs.components.size(), Complex(0.0, 0.0));
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        std::string item = text.substr(pos, comma - pos);
        if (!item.empty()) {
            std::size_t colon = item.rfind(':');
            if (colon == std::string::npos) throw ParseError("expected 'descriptor:coefficient'", pos);
            std::string desc = item.substr(0, colon);
            Complex c = parse_complex(item.substr(colon + 1));
            if (desc == "all") {
                for (auto& v : region.coeffs) v += c;
            } else {
                bool found = false;
                for (int ci = 0; ci < cs.size(); ++ci) {
                    if (cs.components[ci].descriptor == desc) {
                        region.coeffs[ci] += c;
                        found = true;
                        break;
                    }
                }
                if (!found) throw ParseError("unknown component descriptor '" + desc + "'", pos);
            }
        }
        pos = comma + 1;
    }
    return region;
}

std::string format_region(const ComponentSet& cs, const RegionCombination& region) {
    std::string out;
    for (int ci = 0; ci < cs.size(); ++ci) {
        if (!out.empty()) out += ",";
        out += cs.components[ci].descriptor + ":" + format_complex(region.coeffs[ci]);
    }
    return out;
}

bool boundary_at_origin(const ComponentSet& cs, const RegionCombination& region) {
    const PhaseGerm& phase = cs.phase;
    if (phase.dim == 1) return true;  // f^{-1}(0) meets the ball at the origin only

    const double R = cs.ball_radius;
    const double delta = 1e-4 * R;
    // bisect a sign change of f along the segment, then probe both sides of
    // the wall along the gradient and compare the region coefficients
    auto wall_matches = [&](double ax, double ay, double fa, double bx, double by) {
        for (int it = 0; it < 60; ++it) {
            double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
            double fm = phase.eval(mx, my);
            if ((fm < 0.0) == (fa < 0.0)) {
                ax = mx;
                ay = my;
                fa = fm;
            } else {
                bx = mx;
                by = my;
            }
        }
        double zx = 0.5 * (ax + bx), zy = 0.5 * (ay + by);
        auto g = phase.gradient(zx, zy);
        double gn = std::hypot(g[0], g[1]);
        if (gn <= 0.0) return true;
        double px = zx + delta * g[0] / gn, py = zy + delta * g[1] / gn;
        double qx = zx - delta * g[0] / gn, qy = zy - delta * g[1] / gn;
        int ca = cs.component_of(px, py), cb = cs.component_of(qx, qy);
        if (ca >= 0 && cb >= 0 && ca != cb)
            if (std::abs(region.coeffs[ca] - region.coeffs[cb]) > 1e-12) return false;
        return true;
    };

    // radial sweep catches walls transversal to rays
    const int n_rays = 720, n_radial = 400;
    for (int a = 0; a < n_rays; ++a) {
        double th = 2.0 * M_PI * a / n_rays;
        double cx = std::cos(th), cy = std::sin(th);
        double prev_t = 0.05 * R;
        double prev_f = phase.eval(prev_t * cx, prev_t * cy);
        for (int i = 1; i <= n_radial; ++i) {
            double t = 0.05 * R + (0.90 * R) * i / n_radial;
            double f = phase.eval(t * cx, t * cy);
            if ((prev_f < 0.0) != (f < 0.0) && prev_f != 0.0 && f != 0.0)
                if (!wall_matches(prev_t * cx, prev_t * cy, prev_f, t * cx, t * cy)) return false;
            prev_t = t;
            prev_f = f;
        }
    }

    // angular sweep catches walls that are themselves rays (homogeneous f
    // keeps a constant sign along every ray, so the radial sweep is blind)
    const int n_circles = 16, n_angles = 1440;
    for (int c = 0; c < n_circles; ++c) {
        double t = (0.06 + 0.88 * c / (n_circles - 1.0)) * R;
        double prev_x = t, prev_y = 0.0;
        double prev_f = phase.eval(prev_x, prev_y);
        for (int a = 1; a <= n_angles; ++a) {
            double th = 2.0 * M_PI * a / n_angles;
            double x = t * std::cos(th), y = t * std::sin(th);
            double f = phase.eval(x, y);
            if ((prev_f < 0.0) != (f < 0.0) && prev_f != 0.0 && f != 0.0)
                if (!wall_matches(prev_x, prev_y, prev_f, x, y)) return false;
            prev_x = x;
            prev_y = y;
            prev_f = f;
        }
    }
    return true;
}

}  // namespace oscint
