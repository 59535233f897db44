#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "oscint/asympt.hpp"
#include "oscint/fiber.hpp"
#include "oscint/mellin.hpp"
#include "oscint/milnor.hpp"
#include "oscint/model.hpp"
#include "oscint/verify.hpp"

namespace py = pybind11;

namespace {

struct Setup {
    oscint::PhaseGerm phase;
    oscint::TestDensity density;
    oscint::ComponentSet components;
    oscint::RegionCombination region;
};

Setup make_setup(const std::string& phase, const std::string& g, const std::string& region,
                 double radius) {
    Setup s;
    s.phase = oscint::PhaseGerm::parse(phase);
    s.density.m = oscint::Poly::parse(g);
    s.density.radius = radius;
    s.components = oscint::enumerate_components(s.phase, radius);
    s.region = oscint::parse_region(s.components, region);
    return s;
}

std::string monomial_text(int k, int eps) {
    std::string t = eps > 0 ? "" : "-";
    return t + "x^" + std::to_string(k);
}

}  // namespace

PYBIND11_MODULE(_oscint, m) {
    m.doc() = "asymptotics of fiber integrals and oscillating integrals";

    py::register_exception<oscint::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<oscint::Error>(m, "Error", PyExc_RuntimeError);

    m.def(
        "pole_table_json",
        [](const std::string& phase, const std::string& g, const std::string& region, double radius,
           int nu_max, int log_max, double threshold, bool absolute, bool prefactor) {
            Setup s = make_setup(phase, g, region, radius);
            oscint::TwoSidedFunction phi =
                oscint::exact_two_sided_1d(s.phase, s.density, s.components, s.region);
            oscint::ContinueOptions opts;
            opts.zero_threshold = threshold;
            opts.threshold_absolute = absolute;
            opts.include_prefactor = prefactor;
            oscint::ExponentLattice lattice = oscint::spectrum_lattice(s.phase, nu_max, log_max);
            return oscint::mellin_continue(phi, lattice, opts).to_json();
        },
        py::arg("phase"), py::arg("g") = "1", py::arg("region") = "all:1", py::arg("radius") = 1.0,
        py::arg("nu_max") = 4, py::arg("log_max") = 1, py::arg("threshold") = 1e-4,
        py::arg("absolute") = false, py::arg("prefactor") = true,
        "Exact fiber profile -> meromorphic continuation, as the pole-table JSON.");

    m.def(
        "fiber_csv",
        [](const std::string& phase, const std::string& g, const std::string& region, double radius,
           bool exact, double n, std::uint64_t seed, double decades, int bins_per_decade) {
            Setup s = make_setup(phase, g, region, radius);
            oscint::GridSpec grid =
                oscint::default_grid(s.phase, s.density, decades, bins_per_decade);
            if (exact)
                return oscint::exact_fiber_1d(s.phase, s.density, s.components, s.region, grid)
                    .to_csv();
            oscint::SampleOptions opts;
            opts.n_samples = static_cast<std::int64_t>(n);
            opts.seed = seed;
            return oscint::sample_fiber_integral(s.phase, s.density, s.components, s.region, grid,
                                                 opts)
                .to_csv();
        },
        py::arg("phase"), py::arg("g") = "1", py::arg("region") = "all:1", py::arg("radius") = 1.0,
        py::arg("exact") = false, py::arg("n") = 2e6, py::arg("seed") = 1,
        py::arg("decades") = 7.0, py::arg("bins_per_decade") = 16,
        "Binned fiber-integral density as CSV text (exact closed form or Monte Carlo).");

    m.def(
        "oscillatory_terms",
        [](const std::string& phase, const std::string& g, const std::string& region, double radius,
           int direction) {
            Setup s = make_setup(phase, g, region, radius);
            oscint::TwoSidedFunction phi =
                oscint::exact_two_sided_1d(s.phase, s.density, s.components, s.region);
            oscint::OscillatoryExpansion osc =
                oscint::oscillatory_from_expansion(phi.expansion, direction);
            std::vector<std::tuple<std::string, int, oscint::Complex>> out;
            for (const auto& t : osc.terms) out.emplace_back(t.r.str(), t.m, t.c);
            return out;
        },
        py::arg("phase"), py::arg("g") = "1", py::arg("region") = "all:1", py::arg("radius") = 1.0,
        py::arg("direction") = 1,
        "Predicted large-tau terms as (decay exponent, log power, coefficient) triples; the "
        "integral is asymptotic to sum c * (log tau)^m / tau^r.");

    m.def(
        "oscillatory_value",
        [](const std::string& phase, const std::string& g, const std::string& region, double radius,
           double tau, double rel_tol) {
            Setup s = make_setup(phase, g, region, radius);
            oscint::TwoSidedFunction phi =
                oscint::exact_two_sided_1d(s.phase, s.density, s.components, s.region);
            return oscint::oscillatory_eval(phi, tau, rel_tol);
        },
        py::arg("phase"), py::arg("g") = "1", py::arg("region") = "all:1", py::arg("radius") = 1.0,
        py::arg("tau") = 100.0, py::arg("rel_tol") = 1e-8,
        "Numeric value of int exp(i tau f) g via the fiber profile.");

    m.def(
        "components",
        [](const std::string& phase, double radius) {
            oscint::ComponentSet cs =
                oscint::enumerate_components(oscint::PhaseGerm::parse(phase), radius);
            std::vector<std::string> out;
            for (const auto& c : cs.components) out.push_back(c.descriptor);
            return out;
        },
        py::arg("phase"), py::arg("radius") = 1.0,
        "Sign-cell descriptors of the complement of f^{-1}(0) in the ball.");

    m.def(
        "cycle_points",
        [](int k, int eps, const std::string& region, bool hat) {
            oscint::PhaseGerm phase = oscint::PhaseGerm::parse(monomial_text(k, eps));
            oscint::ComponentSet cs = oscint::enumerate_components(phase, 1.0);
            oscint::ExactRegion er = oscint::parse_region_exact(cs, region);
            oscint::SpectralCycle c = hat ? oscint::gamma_hat(phase, cs, er)
                                          : oscint::gamma_cycle(phase, cs, er);
            std::vector<std::string> out;
            for (const auto& z : c.coord) out.push_back(z.str());
            return out;
        },
        py::arg("k") = 2, py::arg("eps") = 1, py::arg("region") = "all:1", py::arg("hat") = false,
        "Exact coordinates of the region's cycle on the k points of the model fiber.");

    m.def(
        "predict_pole_cosets",
        [](int k, int eps, const std::string& region) {
            oscint::PhaseGerm phase = oscint::PhaseGerm::parse(monomial_text(k, eps));
            oscint::ComponentSet cs = oscint::enumerate_components(phase, 1.0);
            oscint::ExactRegion er = oscint::parse_region_exact(cs, region);
            std::map<std::string, int> out;
            for (const auto& [u, ord] : oscint::predict_pole_cosets(phase, cs, er))
                out[u.str()] = ord;
            return out;
        },
        py::arg("k") = 2, py::arg("eps") = 1, py::arg("region") = "all:1",
        "Coset u -> predicted pole order on -u - N, from the exact cycle model.");

    m.def(
        "spectrum_cosets",
        [](const std::string& phase) {
            oscint::ExponentLattice lattice =
                oscint::spectrum_lattice(oscint::PhaseGerm::parse(phase), 1, 0);
            std::vector<std::string> out;
            for (const auto& u : lattice.cosets) out.push_back(u.str());
            return out;
        },
        py::arg("phase"), "Candidate pole cosets for the continuation of the given phase.");

    m.def(
        "run_acceptance",
        [](const std::string& name) {
            std::vector<py::dict> out;
            for (const auto& r : oscint::run_acceptance(name)) {
                py::dict d;
                d["name"] = r.name;
                d["pass"] = r.pass;
                d["seconds"] = r.seconds;
                d["details"] = r.details;
                out.push_back(std::move(d));
            }
            return out;
        },
        py::arg("name") = "all",
        "Run the built-in verification suite; returns one dict per criterion.");
}
