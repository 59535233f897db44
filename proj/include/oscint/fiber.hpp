#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "oscint/expansion.hpp"
#include "oscint/mellin.hpp"
#include "oscint/model.hpp"
#include "oscint/num.hpp"

namespace oscint {

// Geometric binning of |s|, shared by both sides. Edges sit at
// s_min * q^t with q = 10^(1/bins_per_decade); the top edge is rounded up
// to a whole number of bins at or above s_max.
struct GridSpec {
    double s_min = 1e-8;
    double s_max = 1.0;
    int bins_per_decade = 16;

    int n_bins() const;
    double log_step() const;  // ln q
    double center(int b) const;
    double upper_edge() const;
    std::vector<double> centers() const;
};

struct FiberRow {
    int side = +1;      // +1 / -1
    double s = 0.0;     // |s| at the bin center
    Complex J{0.0, 0.0};
    double err = 0.0;   // jackknife standard error, 0 for exact rows
};

// Binned pushforward density J(s) = d/ds of the weighted volume below the
// level s, tabulated per side. Serializes to CSV with a one-line JSON
// metadata header.
struct FiberSamples {
    GridSpec grid;
    std::string meta;  // JSON object; grid fields are embedded on write
    std::vector<FiberRow> rows;

    const FiberRow* row(int side, int bin) const;

    std::string to_csv() const;
    static FiberSamples from_csv(const std::string& text);
    void write_csv(const std::string& path) const;
    static FiberSamples read_csv(const std::string& path);
};

// Grid that covers the reachable values of |f| on the support of the
// density, with s_min a fixed number of decades below the top.
GridSpec default_grid(const PhaseGerm& phase, const TestDensity& density,
                      double decades = 7.0, int bins_per_decade = 16);

// Exact closed-form density for 1d monomial phases: sum over the real roots
// of f(x) = s of region_coeff(x) g(x) / |f'(x)|. Throws UnsupportedFamily
// away from the monomial family.
FiberSamples exact_fiber_1d(const PhaseGerm& phase, const TestDensity& density,
                            const ComponentSet& components, const RegionCombination& region,
                            const GridSpec& grid);

// Same data as a two-sided profile phi(s) = s J(s) with its exact expansion
// attached; the expansion window is the cutoff plateau image (radius/2)^k.
TwoSidedFunction exact_two_sided_1d(const PhaseGerm& phase, const TestDensity& density,
                                    const ComponentSet& components, const RegionCombination& region);

struct SampleOptions {
    std::int64_t n_samples = 2'000'000;
    std::uint64_t seed = 1;
    int n_batches = 64;
    int n_threads = 0;  // 0 = hardware concurrency
};

// Monte Carlo estimate of the binned density for any polynomial phase in
// dimension 1 or 2. Radius is drawn log-uniformly (importance sampling for
// the concentration at the origin), deposits are cloud-in-cell in ln|s|,
// errors are delete-one-batch jackknife. Deterministic for fixed options.
// Throws EmptyRegion when every component coefficient is zero.
FiberSamples sample_fiber_integral(const PhaseGerm& phase, const TestDensity& density,
                                   const ComponentSet& components, const RegionCombination& region,
                                   const GridSpec& grid, const SampleOptions& opts = {});

struct FitOptions {
    double s_fit_max = 0.0;   // 0 = use every populated bin
    double cond_limit = 1e12;
};

struct FitReport {
    double condition = 0.0;
    double rms_residual = 0.0;      // weighted, per side combined
    double max_residual_phi = 0.0;  // worst |J_fit - J| * s over used rows
    int rows_used = 0;
};

// Weighted least squares of J against the lattice basis t^{r-1} ln^j t per
// side (real design matrix, complex right-hand side, SVD with a condition
// guard). Returns coefficients in the phi(s) = s J(s) convention, so the
// negative side absorbs a sign. Throws IllConditioned past cond_limit.
AsymptoticExpansion fit_expansion(const FiberSamples& samples, const ExponentLattice& lattice,
                                  const FitOptions& opts = {}, FitReport* report = nullptr);

// Interpolating two-sided profile from binned data: linear in ln s between
// bin centers, faded to zero at the top edge, switched to the fitted
// expansion below the bottom edge. expansion_valid_to = 0 picks the top of
// the fitted range.
TwoSidedFunction two_sided_from_samples(const FiberSamples& samples, const ExponentLattice& lattice,
                                        double expansion_valid_to = 0.0,
                                        const FitOptions& opts = {});

}  // namespace oscint
