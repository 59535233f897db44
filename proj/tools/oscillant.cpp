// oscillant: fiber densities, Mellin pole tables, oscillatory expansions,
// model cycles, and the built-in verification suite, from one binary.
//
// Exit codes: 0 success, 1 operation or verification failure, 2 usage or parse error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oscint/asympt.hpp"
#include "oscint/errors.hpp"
#include "oscint/expansion.hpp"
#include "oscint/fiber.hpp"
#include "oscint/mellin.hpp"
#include "oscint/milnor.hpp"
#include "oscint/model.hpp"
#include "oscint/verify.hpp"

namespace {

using nlohmann::json;

// Subtree of the config file that applies to the active subcommand: either
// the object stored under the subcommand's name, or the whole (flat) file.
json config_tree(const std::string& path, const std::string& sub) {
    std::ifstream in(path);
    if (!in) throw oscint::ParseError("cannot open config file '" + path + "'", 0);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw oscint::ParseError(std::string("bad config json: ") + e.what(), 0);
    }
    if (j.contains(sub) && j.at(sub).is_object()) return j.at(sub);
    return j;
}

// Config supplies any flag the command line left untouched. Positionals are
// looked up by their bare name.
template <typename T>
void merge_key(const json& j, const CLI::App& cmd, const std::string& flag, T& value) {
    std::string name = cmd.get_option_no_throw("--" + flag) ? "--" + flag : flag;
    if (cmd.count(name) > 0 || !j.contains(flag)) return;
    try {
        j.at(flag).get_to(value);
    } catch (const json::exception& e) {
        throw oscint::ParseError("config key '" + flag + "': " + e.what(), 0);
    }
}

void write_text(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw oscint::ParseError("cannot open output file '" + out_path + "'", 0);
    out << text;
}

// Summary lines go wherever the payload is not.
std::ostream& info(const std::string& out_path) { return out_path.empty() ? std::cerr : std::cout; }

struct PhaseArgs {
    std::string phase;
    std::string g = "1";
    std::string region = "all:1";
    double radius = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--phase", phase, "phase polynomial, e.g. \"x^3\" or \"x^2-y^2\"");
        cmd->add_option("--g", g, "density polynomial factor");
        cmd->add_option("--region", region, "component combination, e.g. \"+:1,-:-1\" or \"all:1\"");
        cmd->add_option("--radius", radius, "cutoff radius of the density");
    }
    void merge(const json& j, const CLI::App& cmd) {
        merge_key(j, cmd, "phase", phase);
        merge_key(j, cmd, "g", g);
        merge_key(j, cmd, "region", region);
        merge_key(j, cmd, "radius", radius);
    }
    void require_phase() const {
        if (phase.empty())
            throw CLI::RequiredError("--phase (flag or config)");
    }
};

struct Resolved {
    oscint::PhaseGerm phase;
    oscint::TestDensity density;
    oscint::ComponentSet components;
    oscint::RegionCombination region;
};

Resolved resolve(const PhaseArgs& a) {
    Resolved r;
    r.phase = oscint::PhaseGerm::parse(a.phase);
    r.density.m = oscint::Poly::parse(a.g);
    r.density.radius = a.radius;
    r.components = oscint::enumerate_components(r.phase, a.radius);
    r.region = oscint::parse_region(r.components, a.region);
    return r;
}

oscint::ExponentLattice lattice_from(const std::string& candidates, const oscint::PhaseGerm& phase,
                                     int nu_max, int log_max) {
    if (candidates == "auto") return oscint::spectrum_lattice(phase, nu_max, log_max);
    std::vector<oscint::Rat> cosets;
    std::stringstream ss(candidates);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) cosets.push_back(oscint::Rat::parse(item).frac());
    return oscint::ExponentLattice::make(cosets, nu_max, log_max);
}

int cmd_fiber(const PhaseArgs& pa, double n, std::uint64_t seed, int batches, int threads,
              bool exact, double decades, int bpd, const std::string& out_path) {
    Resolved r = resolve(pa);
    oscint::GridSpec grid = oscint::default_grid(r.phase, r.density, decades, bpd);
    oscint::FiberSamples rows;
    if (exact) {
        rows = oscint::exact_fiber_1d(r.phase, r.density, r.components, r.region, grid);
    } else {
        oscint::SampleOptions sopts;
        sopts.n_samples = static_cast<std::int64_t>(n);
        sopts.seed = seed;
        sopts.n_batches = batches;
        sopts.n_threads = threads;
        rows = oscint::sample_fiber_integral(r.phase, r.density, r.components, r.region, grid, sopts);
    }
    write_text(out_path, rows.to_csv());
    int pos = 0, neg = 0;
    for (const auto& row : rows.rows)
        if (row.J != oscint::Complex(0.0, 0.0)) (row.side > 0 ? pos : neg)++;
    info(out_path) << "bins " << grid.n_bins() << " per side, populated +" << pos << " / -" << neg
                   << ", s in [" << grid.s_min << ", " << grid.upper_edge() << "]\n";
    return 0;
}

int cmd_mellin(const PhaseArgs& pa, const std::string& in_path, const std::string& candidates,
               int nu_max, int log_max, double s_fit_max, double threshold, bool absolute,
               bool no_prefactor, const std::string& out_path) {
    oscint::TwoSidedFunction phi;
    oscint::ExponentLattice lattice;
    if (!in_path.empty()) {
        oscint::FiberSamples rows = oscint::FiberSamples::read_csv(in_path);
        std::string phase_text = pa.phase;
        if (phase_text.empty() && !rows.meta.empty()) {
            json meta = json::parse(rows.meta);
            phase_text = meta.value("phase", "");
        }
        if (candidates == "auto" && phase_text.empty())
            throw oscint::ParseError("--candidates auto needs a phase (flag or CSV metadata)", 0);
        oscint::PhaseGerm phase;
        if (candidates == "auto") phase = oscint::PhaseGerm::parse(phase_text);
        lattice = lattice_from(candidates, phase, nu_max, log_max);
        oscint::FitOptions fopts;
        fopts.s_fit_max = s_fit_max;
        phi = oscint::two_sided_from_samples(rows, lattice, 0.0, fopts);
    } else {
        pa.require_phase();
        Resolved r = resolve(pa);
        phi = oscint::exact_two_sided_1d(r.phase, r.density, r.components, r.region);
        lattice = lattice_from(candidates, r.phase, nu_max, log_max);
    }
    oscint::ContinueOptions copts;
    copts.zero_threshold = threshold;
    copts.threshold_absolute = absolute;
    copts.include_prefactor = !no_prefactor;
    oscint::PoleTable table = oscint::mellin_continue(phi, lattice, copts);
    write_text(out_path, table.to_json());
    info(out_path) << table.poles.size() << " poles on lattice " << lattice.str() << "\n";
    return 0;
}

int cmd_oscillate(const PhaseArgs& pa, double tau_min, double tau_max, int tau_count, int direction,
                  double rel_tol, const std::string& out_path) {
    pa.require_phase();
    Resolved r = resolve(pa);
    oscint::TwoSidedFunction phi =
        oscint::exact_two_sided_1d(r.phase, r.density, r.components, r.region);
    oscint::OscillatoryExpansion pred = oscint::oscillatory_from_expansion(phi.expansion, direction);

    std::ostringstream csv;
    csv << "# " << json{{"phase", r.phase.poly.str()},
                        {"region", format_region(r.components, r.region)},
                        {"direction", direction},
                        {"terms", pred.str()}}
               .dump()
        << "\n";
    csv << "tau,re,im,pred_re,pred_im\n";
    csv.precision(16);
    for (int i = 0; i < tau_count; ++i) {
        double tau = tau_count == 1
                         ? tau_min
                         : tau_min * std::pow(tau_max / tau_min, double(i) / (tau_count - 1));
        oscint::Complex num = oscint::oscillatory_eval(phi, direction * tau, rel_tol);
        oscint::Complex fit = pred.eval(direction * tau);
        csv << tau << "," << num.real() << "," << num.imag() << "," << fit.real() << ","
            << fit.imag() << "\n";
    }
    write_text(out_path, csv.str());
    info(out_path) << "expansion: " << pred.str() << "\n";
    return 0;
}

int cmd_cycle(int k, int eps, const std::string& region_text, bool hat) {
    std::string phase_text = (eps > 0 ? "x^" : "-x^") + std::to_string(k);
    oscint::PhaseGerm phase = oscint::PhaseGerm::parse(phase_text);
    oscint::ComponentSet cs = oscint::enumerate_components(phase, 1.0);
    oscint::ExactRegion region = oscint::parse_region_exact(cs, region_text);
    oscint::SpectralCycle c = hat ? oscint::gamma_hat(phase, cs, region)
                                  : oscint::gamma_cycle(phase, cs, region);

    std::cout << (hat ? "closed lift of the region class" : "region class") << " on the model fiber of "
              << phase_text << ":\n";
    for (int j = 0; j < k; ++j) {
        auto z = c.coord[j].embed();
        std::cout << "  p_" << j << ": " << c.coord[j].str() << "  =  " << z.real()
                  << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i\n";
    }
    std::cout << "eigencomponents (T eigenvalue exp(-2 pi i m / k)):\n";
    auto predicted = oscint::predict_pole_cosets(phase, cs, region);
    for (int m = 0; m < k; ++m) {
        oscint::SpectralCycle e = oscint::eigencomponent(c, m);
        oscint::Rat u(m, k);
        std::cout << "  m=" << m << "  u=" << u.str() << "  "
                  << (e.is_zero() ? "0" : e.str());
        auto it = predicted.find(u);
        if (it != predicted.end())
            std::cout << "  [predicted pole order " << it->second << "]";
        std::cout << "\n";
    }
    return 0;
}

int cmd_spectrum(const PhaseArgs& pa, int nu_max, int log_max) {
    pa.require_phase();
    oscint::PhaseGerm phase = oscint::PhaseGerm::parse(pa.phase);
    std::vector<int> exps;
    if (phase.family == oscint::PhaseFamily::Monomial1D)
        exps = {phase.k};
    else if (phase.family == oscint::PhaseFamily::BrieskornPham)
        exps = {phase.bp_a[0], phase.bp_a[1]};
    else
        throw oscint::UnsupportedFamily("spectrum needs a monomial or two-term diagonal phase");
    std::vector<oscint::Rat> spec = oscint::pham_spectrum(exps);
    std::cout << "spectrum cosets:";
    for (const auto& u : spec) std::cout << " " << u.str();
    std::cout << "\ncandidate lattice: " << oscint::spectrum_lattice(phase, nu_max, log_max).str()
              << "\n";
    return 0;
}

int cmd_verify(const std::string& which, const std::string& out_path) {
    std::vector<oscint::CriterionResult> results = oscint::run_acceptance(which);
    bool all_pass = true;
    json report = json::array();
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.seconds << " s)  "
                  << r.details << "\n";
        report.push_back(
            {{"name", r.name}, {"pass", r.pass}, {"seconds", r.seconds}, {"details", r.details}});
    }
    write_text(out_path, json{{"pass", all_pass}, {"cases", report}}.dump(2));
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"oscillating-integral workbench"};
    app.require_subcommand(1);
    std::string config_path;
    auto add_config = [&config_path](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config mirroring the flags (flags win)")
            ->configurable(false);
    };

    // fiber
    auto* fiber = app.add_subcommand("fiber", "tabulate the level-set density J(s)");
    PhaseArgs fiber_pa;
    fiber_pa.attach(fiber);
    double f_n = 2e6;
    std::uint64_t f_seed = 1;
    int f_batches = 64, f_threads = 0, f_bpd = 16;
    double f_decades = 7.0;
    bool f_exact = false;
    std::string f_out;
    fiber->add_option("--n", f_n, "Monte Carlo sample count");
    fiber->add_option("--seed", f_seed, "RNG seed");
    fiber->add_option("--batches", f_batches, "jackknife batches");
    fiber->add_option("--threads", f_threads, "worker threads (0 = hardware)");
    fiber->add_flag("--exact", f_exact, "closed-form rows (1d monomial phases)");
    fiber->add_option("--decades", f_decades, "grid depth below s_max");
    fiber->add_option("--bins-per-decade", f_bpd, "grid resolution");
    fiber->add_option("--out", f_out, "CSV path (default stdout)");

    // mellin
    auto* mellin = app.add_subcommand("mellin", "continue the transform, report the pole table");
    PhaseArgs mellin_pa;
    mellin_pa.attach(mellin);
    std::string m_in, m_candidates = "auto", m_out;
    int m_nu_max = 4, m_log_max = 1;
    double m_s_fit_max = 0.0, m_threshold = 1e-4;
    bool m_absolute = false, m_no_prefactor = false;
    mellin->add_option("--in", m_in, "fiber CSV produced by `fiber`");
    mellin->add_option("--candidates", m_candidates,
                       "\"auto\" (phase spectrum) or comma list of cosets, e.g. \"0,1/3,2/3\"");
    mellin->add_option("--nu-max", m_nu_max, "integer depth of the candidate lattice");
    mellin->add_option("--log-max", m_log_max, "largest admitted log power");
    mellin->add_option("--s-fit-max", m_s_fit_max, "fit window upper edge (0 = all bins)");
    mellin->add_option("--threshold", m_threshold, "coefficient threshold for reporting");
    mellin->add_flag("--absolute-threshold", m_absolute, "threshold is absolute, not relative");
    mellin->add_flag("--no-prefactor", m_no_prefactor,
                     "report the bracket itself, without the 1/(i pi) prefactor");
    mellin->add_option("--out", m_out, "JSON path (default stdout)");

    // oscillate
    auto* osc = app.add_subcommand("oscillate", "compare I(tau) against the predicted expansion");
    PhaseArgs osc_pa;
    osc_pa.attach(osc);
    double o_tau_min = 10.0, o_tau_max = 1000.0, o_rel = 1e-8;
    int o_count = 7, o_direction = +1;
    std::string o_out;
    osc->add_option("--tau-min", o_tau_min, "smallest frequency");
    osc->add_option("--tau-max", o_tau_max, "largest frequency");
    osc->add_option("--tau-count", o_count, "geometric frequency count");
    osc->add_option("--direction", o_direction, "sign of tau")->check(CLI::IsMember({-1, 1}));
    osc->add_option("--rel-tol", o_rel, "quadrature relative tolerance");
    osc->add_option("--out", o_out, "CSV path (default stdout)");

    // cycle
    auto* cycle = app.add_subcommand("cycle", "region class on the model fiber, eigencomponents");
    int c_k = 2, c_eps = 1;
    std::string c_region = "all:1";
    bool c_hat = false;
    cycle->add_option("--k", c_k, "monomial exponent")->check(CLI::PositiveNumber);
    cycle->add_option("--eps", c_eps, "sign of the phase")->check(CLI::IsMember({-1, 1}));
    cycle->add_option("--region", c_region, "exact component combination (\"\" = zero cycle)");
    cycle->add_flag("--hat", c_hat, "compactly-supported variant");

    // spectrum
    auto* spectrum = app.add_subcommand("spectrum", "candidate pole cosets of the phase");
    PhaseArgs spec_pa;
    spec_pa.attach(spectrum);
    int s_nu_max = 4, s_log_max = 1;
    spectrum->add_option("--nu-max", s_nu_max, "integer depth of the candidate lattice");
    spectrum->add_option("--log-max", s_log_max, "largest admitted log power");

    // verify
    auto* verify = app.add_subcommand("verify", "run the built-in verification suite");
    std::string v_case = "all", v_out;
    verify->add_option("case", v_case,
                       "lemma1, detection-1d, pole-order, dictionary, mc-2d, exact-algebra, all");
    verify->add_option("--out", v_out, "JSON report path (default stdout)");

    for (auto* cmd : {fiber, mellin, osc, cycle, spectrum, verify}) add_config(cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        json cfg = json::object();
        CLI::App* active = app.get_subcommands().front();
        if (!config_path.empty()) cfg = config_tree(config_path, active->get_name());

        if (fiber->parsed()) {
            fiber_pa.merge(cfg, *fiber);
            merge_key(cfg, *fiber, "n", f_n);
            merge_key(cfg, *fiber, "seed", f_seed);
            merge_key(cfg, *fiber, "batches", f_batches);
            merge_key(cfg, *fiber, "threads", f_threads);
            merge_key(cfg, *fiber, "exact", f_exact);
            merge_key(cfg, *fiber, "decades", f_decades);
            merge_key(cfg, *fiber, "bins-per-decade", f_bpd);
            merge_key(cfg, *fiber, "out", f_out);
            fiber_pa.require_phase();
            return cmd_fiber(fiber_pa, f_n, f_seed, f_batches, f_threads, f_exact, f_decades,
                             f_bpd, f_out);
        }
        if (mellin->parsed()) {
            mellin_pa.merge(cfg, *mellin);
            merge_key(cfg, *mellin, "in", m_in);
            merge_key(cfg, *mellin, "candidates", m_candidates);
            merge_key(cfg, *mellin, "nu-max", m_nu_max);
            merge_key(cfg, *mellin, "log-max", m_log_max);
            merge_key(cfg, *mellin, "s-fit-max", m_s_fit_max);
            merge_key(cfg, *mellin, "threshold", m_threshold);
            merge_key(cfg, *mellin, "absolute-threshold", m_absolute);
            merge_key(cfg, *mellin, "no-prefactor", m_no_prefactor);
            merge_key(cfg, *mellin, "out", m_out);
            return cmd_mellin(mellin_pa, m_in, m_candidates, m_nu_max, m_log_max, m_s_fit_max,
                              m_threshold, m_absolute, m_no_prefactor, m_out);
        }
        if (osc->parsed()) {
            osc_pa.merge(cfg, *osc);
            merge_key(cfg, *osc, "tau-min", o_tau_min);
            merge_key(cfg, *osc, "tau-max", o_tau_max);
            merge_key(cfg, *osc, "tau-count", o_count);
            merge_key(cfg, *osc, "direction", o_direction);
            merge_key(cfg, *osc, "rel-tol", o_rel);
            merge_key(cfg, *osc, "out", o_out);
            return cmd_oscillate(osc_pa, o_tau_min, o_tau_max, o_count, o_direction, o_rel, o_out);
        }
        if (cycle->parsed()) {
            merge_key(cfg, *cycle, "k", c_k);
            merge_key(cfg, *cycle, "eps", c_eps);
            merge_key(cfg, *cycle, "region", c_region);
            merge_key(cfg, *cycle, "hat", c_hat);
            return cmd_cycle(c_k, c_eps, c_region, c_hat);
        }
        if (spectrum->parsed()) {
            spec_pa.merge(cfg, *spectrum);
            merge_key(cfg, *spectrum, "nu-max", s_nu_max);
            merge_key(cfg, *spectrum, "log-max", s_log_max);
            return cmd_spectrum(spec_pa, s_nu_max, s_log_max);
        }
        if (verify->parsed()) {
            merge_key(cfg, *verify, "case", v_case);
            merge_key(cfg, *verify, "out", v_out);
            try {
                return cmd_verify(v_case, v_out);
            } catch (const oscint::DomainError& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }
    } catch (const CLI::RequiredError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const oscint::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const oscint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
