#pragma once

#include "clf/calibration.hpp"
#include "clf/density_grid.hpp"

namespace clf::detail {

// Unit-scale stable density cached for one mu; log_pdf rescales.
class TransitionDensity {
public:
    explicit TransitionDensity(double mu);
    double log_pdf(double x, double scale) const;

private:
    StableParams unit_;
    DensityGrid grid_;
};

// Pseudo-likelihood with a prepared density (no argument validation).
double log_likelihood(const ModelParams& p, const GrowthSeries& g, double dt, const TransitionDensity& density);

}  // namespace clf::detail
