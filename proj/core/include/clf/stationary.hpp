#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clf/density_grid.hpp"
#include "clf/dynamics.hpp"
#include "clf/stable.hpp"

namespace clf {

struct FfpOptions {
    /// Stop when the L1 change per unit pseudo-time falls below this.
    double tol = 1e-8;
    std::size_t max_steps = 500000;
    /// The solver works on a periodic domain this many times wider than the output grid.
    std::size_t pad_factor = 8;
    /// Pseudo-time step = courant * dx / max|V'| over r0 +- 4 characteristic widths.
    double courant = 4.0;
};

struct FfpSolution {
    /// Stationary density on the requested grid, unit mass on that grid.
    DensityGrid density;
    /// Same solution on the whole padded computational domain, unit mass.
    DensityGrid domain;
    std::size_t steps = 0;
    double dt = 0.0;
};

/// Length scale (D^mu / alpha)^(1/(mu + beta - 2)) where drift and noise balance.
double characteristic_width(const Potential& p, const StableParams& noise);

/// r0 +- 30 characteristic widths, 2^12 nodes.
GridSpec default_stationary_grid(const Potential& p, const StableParams& noise);

/// Stationary law of dr = -V'(r) dt + dL(mu, D), by time-marching
///   dP/dt = d/dr[V'(r) P] - D^mu (-Laplacian)^(mu/2) P
/// with Strang splitting: the fractional term is applied exactly in Fourier space and the
/// drift by remapping the cumulative distribution along the exact characteristics.
FfpSolution solve_stationary_ffp_detailed(const Potential& p, const StableParams& noise, const GridSpec& grid,
                                          const FfpOptions& options = {});

DensityGrid solve_stationary_ffp(const Potential& p, const StableParams& noise, const GridSpec& grid,
                                 const FfpOptions& options = {});

/// Gaussian-kernel density estimate on `grid`, rescaled to unit mass on the grid.
/// Large inputs are linearly binned and convolved by FFT.
DensityGrid kde(std::span<const double> samples, double bandwidth, const GridSpec& grid);

/// 0.9 min(sd, IQR/1.34) n^(-1/5).
double silverman_bandwidth(std::span<const double> samples);

struct ModeReport {
    std::vector<double> locations;
    std::vector<double> densities;
    bool is_bimodal = false;

    std::size_t count() const noexcept { return locations.size(); }
};

/// Strict interior local maxima whose topographic prominence exceeds
/// min_prominence * max(density).
ModeReport find_modes(const DensityGrid& density, double min_prominence = 0.05);

/// CCDF tail exponent of the stationary law, beta + mu - 2.
double predicted_tail_exponent(double beta, double mu);

/// True iff beta > 4 - mu.
bool variance_is_finite(double beta, double mu);

/// Least-squares log-log slope of the two-sided CCDF P(|r - center| > x), x log-spaced in [from, to].
double ccdf_loglog_slope(const DensityGrid& density, double center, double from, double to);

}  // namespace clf
