#pragma once

#include "clf/density_grid.hpp"
#include "clf/random.hpp"

namespace clf {

/// Symmetric alpha-stable law with characteristic function exp(-(scale*|k|)^mu).
/// mu = 2 is Gaussian with variance 2*scale^2; mu = 1 is Cauchy with the given scale.
class StableParams {
public:
    /// Throws InvalidArgument unless 0 < mu <= 2 and scale > 0.
    StableParams(double mu, double scale);

    double mu() const noexcept { return mu_; }
    double scale() const noexcept { return scale_; }

    StableParams with_scale(double scale) const { return {mu_, scale}; }

private:
    double mu_;
    double scale_;
};

double char_fn(const StableParams& params, double k);

/// One draw by the Chambers-Mallows-Stuck transform.
double sample(const StableParams& params, Rng& rng);

/// Unit-scale draw; sample(p, rng) == p.scale() * sample_standard(p.mu(), rng) for the same stream.
double sample_standard(double mu, Rng& rng);

/// Density by Fourier inversion of char_fn on a grid symmetric about 0 with an odd
/// number of nodes. Periodic images of the heavy tail are subtracted with the tail
/// series, so values stay accurate out to the grid edge; ringing below zero is
/// clipped and the clipped mass restored by rescaling.
/// Throws GridTooNarrow when char_fn at the grid's Nyquist wavenumber exceeds 1e-8.
DensityGrid pdf_grid(const StableParams& params, const GridSpec& grid);

/// 2^16+1 nodes over +-200 scales.
GridSpec default_pdf_grid(const StableParams& params);

/// Log-density at x using `cache` (from pdf_grid for the same params): four-point
/// interpolation of log values inside the grid, the tail series outside it.
double log_pdf(const StableParams& params, double x, const DensityGrid& cache);

/// Large-|x| expansion of the density,
///   (1/pi) sum_k (-1)^(k+1) Gamma(k mu + 1)/k! sin(k pi mu / 2) scale^(k mu) |x|^(-(k mu + 1)),
/// truncated after `terms` terms. Zero for mu = 2.
double tail_density(const StableParams& params, double x, int terms = 4);

/// Leading tail coefficient C_mu = sin(pi mu / 2) Gamma(1 + mu) / pi.
double tail_coefficient(double mu);

}  // namespace clf
