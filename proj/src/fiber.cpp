#include "oscint/fiber.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <memory>
#include <sstream>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "oscint/errors.hpp"

namespace oscint {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double monomial_root_weight(int k, double t) {
    // 1/|f'| at |x| = t^{1/k} for f = +-x^k
    double x = std::pow(t, 1.0 / k);
    return 1.0 / (k * std::pow(x, k - 1));
}

// root sign patterns of eps * x^k = sigma * t, t > 0
std::vector<int> root_signs(int eps, int k, int sigma) {
    const bool even = k % 2 == 0;
    if (eps > 0) {
        if (sigma > 0) return even ? std::vector<int>{+1, -1} : std::vector<int>{+1};
        return even ? std::vector<int>{} : std::vector<int>{-1};
    }
    if (sigma > 0) return even ? std::vector<int>{} : std::vector<int>{-1};
    return even ? std::vector<int>{+1, -1} : std::vector<int>{+1};
}

Complex side_coeff(const ComponentSet& cs, const RegionCombination& region, int sign) {
    auto it = cs.cell_index.find(sign > 0 ? "+" : "-");
    if (it == cs.cell_index.end()) return {0.0, 0.0};
    return region.coeffs[it->second];
}

Complex exact_density_1d(const PhaseGerm& phase, const TestDensity& density,
                         const ComponentSet& cs, const RegionCombination& region,
                         int sigma, double t) {
    Complex total{0.0, 0.0};
    for (int sign : root_signs(phase.eps, phase.k, sigma)) {
        double x = sign * std::pow(t, 1.0 / phase.k);
        Complex a = side_coeff(cs, region, sign);
        if (a == Complex(0.0, 0.0)) continue;
        total += a * density.eval(x) * monomial_root_weight(phase.k, t);
    }
    return total;
}

void require_monomial(const PhaseGerm& phase) {
    if (phase.family != PhaseFamily::Monomial1D)
        throw UnsupportedFamily("closed-form fibers only exist for the 1d monomial family");
}

// sup of sum |c_alpha| r^|alpha| over r <= R, written as C * r^ord with ord
// the vanishing order at 0; |f| <= C r^ord rigorously on the ball.
void vanishing_bound(const Poly& f, double R, int& ord, double& C) {
    ord = 0;
    C = 0.0;
    int best = 1 << 20;
    for (const auto& [key, c] : f.terms) best = std::min(best, key.first + key.second);
    ord = best;
    for (const auto& [key, c] : f.terms)
        C += std::abs(c.to_double()) * std::pow(R, key.first + key.second - ord);
}

}  // namespace

int GridSpec::n_bins() const {
    if (!(s_min > 0.0) || !(s_max > s_min) || bins_per_decade < 1)
        throw DomainError("grid needs 0 < s_min < s_max and bins_per_decade >= 1");
    double n = std::log10(s_max / s_min) * bins_per_decade;
    return std::max(1, static_cast<int>(std::ceil(n - 1e-9)));
}

double GridSpec::log_step() const { return std::log(10.0) / bins_per_decade; }

double GridSpec::center(int b) const { return s_min * std::exp((b + 0.5) * log_step()); }

double GridSpec::upper_edge() const { return s_min * std::exp(n_bins() * log_step()); }

std::vector<double> GridSpec::centers() const {
    std::vector<double> out(n_bins());
    for (int b = 0; b < n_bins(); ++b) out[b] = center(b);
    return out;
}

const FiberRow* FiberSamples::row(int side, int bin) const {
    double s = grid.center(bin);
    for (const auto& r : rows)
        if (r.side == side && std::abs(std::log(r.s / s)) < 1e-9) return &r;
    return nullptr;
}

std::string FiberSamples::to_csv() const {
    nlohmann::json j = meta.empty() ? nlohmann::json::object() : nlohmann::json::parse(meta);
    j["s_min"] = grid.s_min;
    j["s_max"] = grid.s_max;
    j["bins_per_decade"] = grid.bins_per_decade;
    std::ostringstream out;
    out << "# " << j.dump() << "\n";
    out << "side,s,J,stderr\n";
    for (const auto& r : rows)
        out << (r.side > 0 ? '+' : '-') << ',' << fmt_double(r.s) << ','
            << format_complex(r.J) << ',' << fmt_double(r.err) << "\n";
    return out.str();
}

FiberSamples FiberSamples::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw ParseError("missing metadata header line", 0);
    FiberSamples out;
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line.substr(2));
    } catch (const std::exception& e) {
        throw ParseError(std::string("bad metadata json: ") + e.what(), 2);
    }
    out.grid.s_min = j.at("s_min").get<double>();
    out.grid.s_max = j.at("s_max").get<double>();
    out.grid.bins_per_decade = j.at("bins_per_decade").get<int>();
    out.meta = j.dump();
    if (!std::getline(in, line) || line.rfind("side", 0) != 0)
        throw ParseError("missing column header", 0);
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string side, s, J, err;
        if (!std::getline(ls, side, ',') || !std::getline(ls, s, ',') ||
            !std::getline(ls, J, ',') || !std::getline(ls, err))
            throw ParseError("short row", lineno);
        FiberRow r;
        if (side == "+")
            r.side = +1;
        else if (side == "-")
            r.side = -1;
        else
            throw ParseError("side must be + or -", lineno);
        r.s = std::stod(s);
        r.J = parse_complex(J);
        r.err = std::stod(err);
        out.rows.push_back(r);
    }
    return out;
}

void FiberSamples::write_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << to_csv();
}

FiberSamples FiberSamples::read_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return from_csv(ss.str());
}

GridSpec default_grid(const PhaseGerm& phase, const TestDensity& density, double decades,
                      int bins_per_decade) {
    const double R = density.radius;
    double fmax = 0.0;
    if (phase.dim == 1) {
        for (int g = 1; g <= 512; ++g) {
            double x = R * g / 512.0;
            fmax = std::max({fmax, std::abs(phase.eval(x)), std::abs(phase.eval(-x))});
        }
    } else {
        const double golden = M_PI * (3.0 - std::sqrt(5.0));
        for (int g = 1; g <= 4096; ++g) {
            double r = R * std::sqrt(g / 4096.0);
            double th = golden * g;
            fmax = std::max(fmax, std::abs(phase.eval(r * std::cos(th), r * std::sin(th))));
        }
    }
    if (fmax <= 0.0) throw DomainError("phase vanishes on the whole support grid");
    GridSpec grid;
    grid.s_max = fmax * 1.02;
    grid.s_min = grid.s_max * std::pow(10.0, -decades);
    grid.bins_per_decade = bins_per_decade;
    return grid;
}

FiberSamples exact_fiber_1d(const PhaseGerm& phase, const TestDensity& density,
                            const ComponentSet& components, const RegionCombination& region,
                            const GridSpec& grid) {
    require_monomial(phase);
    if (region.all_zero()) throw EmptyRegion("every component coefficient is zero");
    FiberSamples out;
    out.grid = grid;
    nlohmann::json meta;
    meta["kind"] = "exact";
    meta["phase"] = phase.poly.str();
    meta["density"] = density.m.str();
    meta["radius"] = density.radius;
    meta["region"] = format_region(components, region);
    out.meta = meta.dump();
    for (int sigma : {+1, -1})
        for (int b = 0; b < grid.n_bins(); ++b) {
            FiberRow r;
            r.side = sigma;
            r.s = grid.center(b);
            r.J = exact_density_1d(phase, density, components, region, sigma, r.s);
            out.rows.push_back(r);
        }
    return out;
}

TwoSidedFunction exact_two_sided_1d(const PhaseGerm& phase, const TestDensity& density,
                                    const ComponentSet& components,
                                    const RegionCombination& region) {
    require_monomial(phase);
    if (region.all_zero()) throw EmptyRegion("every component coefficient is zero");
    const int k = phase.k;
    TwoSidedFunction f;
    f.s0 = std::pow(density.radius, k);
    f.pos = [=](double t) { return t * exact_density_1d(phase, density, components, region, +1, t); };
    f.neg = [=](double t) { return -t * exact_density_1d(phase, density, components, region, -1, t); };

    for (const auto& [key, mc] : density.m.terms) {
        int i = key.first;
        double mi = mc.to_double();
        for (int sigma : {+1, -1}) {
            Complex c{0.0, 0.0};
            for (int sign : root_signs(phase.eps, k, sigma))
                c += side_coeff(components, region, sign) * ((i % 2 && sign < 0) ? -mi : mi);
            c /= k;
            if (sigma < 0) c = -c;
            if (c != Complex(0.0, 0.0)) f.expansion.add(sigma, Rat(i + 1, k), 0, c);
        }
    }
    f.expansion.canonicalize();
    f.has_expansion = true;
    f.expansion_valid_to = std::pow(density.radius / 2.0, k);
    return f;
}

namespace {

struct BatchDeposit {
    // [side 0=pos, 1=neg][bin]
    std::vector<Complex> acc[2];
};

}  // namespace

FiberSamples sample_fiber_integral(const PhaseGerm& phase, const TestDensity& density,
                                   const ComponentSet& components, const RegionCombination& region,
                                   const GridSpec& grid, const SampleOptions& opts) {
    if (region.all_zero()) throw EmptyRegion("every component coefficient is zero");
    if (phase.dim != 1 && phase.dim != 2) throw UnsupportedFamily("sampling supports dim 1 and 2");
    const double R = density.radius;
    int ord = 0;
    double C = 0.0;
    vanishing_bound(phase.poly, R, ord, C);
    if (ord < 1 || C <= 0.0) throw DomainError("phase must vanish at the origin");
    double r_min = std::pow(grid.s_min / (4.0 * C), 1.0 / ord);
    r_min = std::clamp(r_min, 1e-12 * R, 0.45 * R);
    const double L = std::log(R / r_min);
    const int n_bins = grid.n_bins();
    const double inv_step = 1.0 / grid.log_step();
    const double ln_smin = std::log(grid.s_min);
    const int B = std::max(1, opts.n_batches);
    const std::int64_t per_batch = std::max<std::int64_t>(1, opts.n_samples / B);
    const int dim = phase.dim;

    auto run_batch = [&](int batch) {
        BatchDeposit out;
        out.acc[0].assign(n_bins, Complex(0.0, 0.0));
        out.acc[1].assign(n_bins, Complex(0.0, 0.0));
        std::vector<KahanC> acc[2];
        acc[0].assign(n_bins, KahanC{});
        acc[1].assign(n_bins, KahanC{});
        std::uint64_t state = opts.seed;
        std::uint64_t lead = splitmix64(state) + static_cast<std::uint64_t>(batch) * 0x9e3779b97f4a7c15ull;
        std::uint64_t rng = splitmix64(lead);
        auto uniform = [&rng]() {
            return (splitmix64(rng) >> 11) * 0x1.0p-53;  // [0, 1)
        };
        for (std::int64_t i = 0; i < per_batch; ++i) {
            double r = r_min * std::exp(L * uniform());
            double x, y = 0.0, w;
            if (dim == 1) {
                x = (uniform() < 0.5 ? -1.0 : 1.0) * r;
                w = 2.0 * L * r;
            } else {
                double th = 2.0 * M_PI * uniform();
                x = r * std::cos(th);
                y = r * std::sin(th);
                w = 2.0 * M_PI * L * r * r;
            }
            double g = density.eval(x, y);
            if (g == 0.0) continue;
            double s = phase.eval(x, y);
            if (s == 0.0) continue;
            Complex a = region.coeff_at(components, x, y);
            if (a == Complex(0.0, 0.0)) continue;
            int side = s > 0.0 ? 0 : 1;
            double p = (std::log(std::abs(s)) - ln_smin) * inv_step - 0.5;
            double fl = std::floor(p);
            int b0 = static_cast<int>(fl);
            double fr = p - fl;
            Complex val = a * (g * w);
            if (b0 >= 0 && b0 < n_bins) acc[side][b0].add(val * (1.0 - fr));
            if (b0 + 1 >= 0 && b0 + 1 < n_bins) acc[side][b0 + 1].add(val * fr);
        }
        for (int sd : {0, 1})
            for (int b = 0; b < n_bins; ++b) out.acc[sd][b] = acc[sd][b].value();
        return out;
    };

    unsigned hw = opts.n_threads > 0 ? opts.n_threads : std::max(1u, std::thread::hardware_concurrency());
    std::vector<BatchDeposit> batches(B);
    for (int start = 0; start < B; start += static_cast<int>(hw)) {
        int stop = std::min(B, start + static_cast<int>(hw));
        std::vector<std::future<BatchDeposit>> futs;
        for (int b = start; b < stop; ++b)
            futs.push_back(std::async(std::launch::async, run_batch, b));
        for (int b = start; b < stop; ++b) batches[b] = futs[b - start].get();
    }

    const double N = static_cast<double>(per_batch) * B;
    FiberSamples out;
    out.grid = grid;
    nlohmann::json meta;
    meta["kind"] = "mc";
    meta["phase"] = phase.poly.str();
    meta["density"] = density.m.str();
    meta["radius"] = density.radius;
    meta["region"] = format_region(components, region);
    meta["n_samples"] = per_batch * B;
    meta["seed"] = opts.seed;
    meta["n_batches"] = B;
    out.meta = meta.dump();

    for (int sigma : {+1, -1}) {
        int sd = sigma > 0 ? 0 : 1;
        for (int b = 0; b < n_bins; ++b) {
            double denom = N * grid.center(b) * grid.log_step();
            KahanC total;
            for (const auto& bd : batches) total.add(bd.acc[sd][b]);
            Complex S = total.value();
            FiberRow row;
            row.side = sigma;
            row.s = grid.center(b);
            row.J = S / denom;
            // delete-one-batch jackknife on the same normalization
            double nb = static_cast<double>(per_batch);
            Complex mean_loo{0.0, 0.0};
            std::vector<Complex> loo(batches.size());
            for (std::size_t kb = 0; kb < batches.size(); ++kb) {
                loo[kb] = (S - batches[kb].acc[sd][b]) / ((N - nb) * grid.center(b) * grid.log_step());
                mean_loo += loo[kb];
            }
            mean_loo /= static_cast<double>(batches.size());
            double var = 0.0;
            for (const auto& v : loo) var += std::norm(v - mean_loo);
            var *= (batches.size() - 1.0) / batches.size();
            row.err = std::sqrt(var);
            out.rows.push_back(row);
        }
    }
    return out;
}

AsymptoticExpansion fit_expansion(const FiberSamples& samples, const ExponentLattice& lattice,
                                  const FitOptions& opts, FitReport* report) {
    std::vector<Rat> exps = lattice.exponents();
    const int n_log = lattice.max_log_power + 1;
    const int n_basis = static_cast<int>(exps.size()) * n_log;
    if (n_basis == 0) throw DomainError("empty exponent lattice");

    AsymptoticExpansion result;
    double cond_worst = 0.0, rms = 0.0, max_res_phi = 0.0;
    int rows_total = 0;
    double wsq_sum = 0.0;

    for (int sigma : {+1, -1}) {
        std::vector<const FiberRow*> use;
        for (const auto& r : samples.rows) {
            if (r.side != sigma) continue;
            if (opts.s_fit_max > 0.0 && r.s > opts.s_fit_max) continue;
            if (r.J == Complex(0.0, 0.0) && r.err == 0.0) continue;
            use.push_back(&r);
        }
        if (use.empty()) continue;
        const int n = static_cast<int>(use.size());
        if (n < n_basis)
            throw IllConditioned("fewer populated bins than basis functions",
                                 std::numeric_limits<double>::infinity());

        bool weighted = std::any_of(use.begin(), use.end(),
                                    [](const FiberRow* r) { return r->err > 0.0; });
        double err_floor = 0.0;
        if (weighted) {
            std::vector<double> errs;
            for (auto* r : use)
                if (r->err > 0.0) errs.push_back(r->err);
            std::nth_element(errs.begin(), errs.begin() + errs.size() / 2, errs.end());
            err_floor = 1e-3 * errs[errs.size() / 2];
        }

        Eigen::MatrixXd A(n, n_basis);
        Eigen::VectorXd yr(n), yi(n);
        std::vector<double> wts(n);
        for (int i = 0; i < n; ++i) {
            double t = use[i]->s;
            double w = weighted ? 1.0 / std::max(use[i]->err, err_floor) : 1.0;
            wts[i] = w;
            double lt = std::log(t);
            int col = 0;
            for (const auto& r : exps) {
                double base = std::pow(t, r.to_double() - 1.0);
                double lp = 1.0;
                for (int j = 0; j < n_log; ++j) {
                    A(i, col++) = w * base * lp;
                    lp *= lt;
                }
            }
            yr(i) = w * use[i]->J.real();
            yi(i) = w * use[i]->J.imag();
        }

        // equilibrate: steep exponents differ by many orders of magnitude in
        // raw column norm across a multi-decade grid, which is not the
        // degeneracy the condition guard is meant to measure
        Eigen::VectorXd colscale(n_basis);
        for (int c = 0; c < n_basis; ++c) {
            double nrm = A.col(c).norm();
            colscale(c) = nrm > 0.0 ? nrm : 1.0;
            A.col(c) /= colscale(c);
        }

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        double smin = svd.singularValues()(n_basis - 1);
        double smax = svd.singularValues()(0);
        double cond = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
        cond_worst = std::max(cond_worst, cond);
        if (cond > opts.cond_limit)
            throw IllConditioned("lattice basis is numerically degenerate on this grid", cond);
        Eigen::VectorXd cr = svd.solve(yr);
        Eigen::VectorXd ci = svd.solve(yi);
        Eigen::VectorXd rr = A * cr - yr, ri = A * ci - yi;
        cr.array() /= colscale.array();
        ci.array() /= colscale.array();

        // coefficient variances from the pseudoinverse rows; weighted rows
        // carry unit noise, unweighted fits use the pooled residual variance
        double noise = 1.0;
        if (!weighted)
            noise = n > n_basis ? (rr.squaredNorm() + ri.squaredNorm()) / (2.0 * (n - n_basis))
                                : 0.0;
        const Eigen::MatrixXd& V = svd.matrixV();

        int col = 0;
        for (const auto& r : exps)
            for (int j = 0; j < n_log; ++j, ++col) {
                Complex c(cr(col), ci(col));
                if (sigma < 0) c = -c;  // phi(-t) = -t J(-t)
                if (c == Complex(0.0, 0.0)) continue;
                double var = 0.0;
                for (int q = 0; q < n_basis; ++q) {
                    double vq = V(col, q) / svd.singularValues()(q);
                    var += vq * vq;
                }
                result.add(sigma, r, j, c, std::sqrt(var * noise) / colscale(col));
            }

        for (int i = 0; i < n; ++i) {
            double res = std::hypot(rr(i), ri(i));
            rms += res * res;
            wsq_sum += 1.0;
            max_res_phi = std::max(max_res_phi, res / wts[i] * use[i]->s);
            ++rows_total;
        }
    }

    result.canonicalize();
    if (report) {
        report->condition = cond_worst;
        report->rms_residual = wsq_sum > 0.0 ? std::sqrt(rms / wsq_sum) : 0.0;
        report->max_residual_phi = max_res_phi;
        report->rows_used = rows_total;
    }
    return result;
}

TwoSidedFunction two_sided_from_samples(const FiberSamples& samples, const ExponentLattice& lattice,
                                        double expansion_valid_to, const FitOptions& opts) {
    FitReport rep;
    AsymptoticExpansion expansion = fit_expansion(samples, lattice, opts, &rep);

    const GridSpec grid = samples.grid;
    // interpolate the residual against the fitted expansion, not the raw rows:
    // the expansion carries the singular behaviour near zero, so the leftover is
    // smooth and a piecewise-linear model of it stays within the fit residual
    auto fitted_J = [&](int sigma, double s) {
        Complex phi_fit = expansion.eval_side(sigma, s);
        return sigma > 0 ? phi_fit / s : -phi_fit / s;
    };
    auto make_side = [&](int sigma) {
        auto lns = std::make_shared<std::vector<double>>();
        auto val = std::make_shared<std::vector<Complex>>();
        for (const auto& r : samples.rows)
            if (r.side == sigma) {
                lns->push_back(std::log(r.s));
                val->push_back(r.J - fitted_J(sigma, r.s));
            }
        // top edge anchor: density support ends inside the grid
        lns->push_back(std::log(grid.upper_edge()));
        val->push_back(-fitted_J(sigma, grid.upper_edge()));
        return std::pair(lns, val);
    };
    auto [lp, vp] = make_side(+1);
    auto [ln_, vn] = make_side(-1);
    AsymptoticExpansion exp_copy = expansion;
    double low_edge = grid.s_min;

    auto interp = [](const std::vector<double>& lns, const std::vector<Complex>& val, double lt) {
        auto it = std::upper_bound(lns.begin(), lns.end(), lt);
        if (it == lns.begin()) return val.front();
        if (it == lns.end()) return Complex(0.0, 0.0);
        std::size_t hi = it - lns.begin(), lo = hi - 1;
        double u = (lt - lns[lo]) / (lns[hi] - lns[lo]);
        return val[lo] * (1.0 - u) + val[hi] * u;
    };

    TwoSidedFunction f;
    f.s0 = grid.upper_edge();
    f.pos = [lns = lp, val = vp, exp_copy, low_edge, interp](double t) {
        if (t < low_edge && !exp_copy.pos.empty()) return exp_copy.eval_side(+1, t);
        return exp_copy.eval_side(+1, t) + t * interp(*lns, *val, std::log(t));
    };
    f.neg = [lns = ln_, val = vn, exp_copy, low_edge, interp](double t) {
        if (t < low_edge && !exp_copy.neg.empty()) return exp_copy.eval_side(-1, t);
        return exp_copy.eval_side(-1, t) - t * interp(*lns, *val, std::log(t));
    };
    f.has_expansion = !expansion.empty();
    f.expansion = expansion;
    f.expansion_valid_to =
        expansion_valid_to > 0.0 ? expansion_valid_to
                                 : (opts.s_fit_max > 0.0 ? opts.s_fit_max : grid.upper_edge());
    f.eval_valid_from = grid.s_min;
    f.fit_residual = rep.max_residual_phi + 1e-12;
    return f;
}

}  // namespace oscint
