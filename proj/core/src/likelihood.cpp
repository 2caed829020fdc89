#include "likelihood.hpp"

#include <cmath>

#include "clf/error.hpp"

namespace clf::detail {
namespace {

constexpr double kHalfWidth = 64.0;

GridSpec unit_grid(double mu) {
    // Grow the node count until the characteristic function is negligible at Nyquist.
    std::size_t intervals = 8192;
    const double need = std::log(1e9);
    while (std::pow(M_PI * static_cast<double>(intervals) / (2.0 * kHalfWidth), mu) < need) {
        intervals *= 2;
        if (intervals > (std::size_t{1} << 17)) throw GridTooNarrow("mu too small for the likelihood grid");
    }
    return {-kHalfWidth, kHalfWidth, intervals + 1};
}

}  // namespace

TransitionDensity::TransitionDensity(double mu)
    : unit_(mu, 1.0), grid_(pdf_grid(unit_, unit_grid(mu))) {}

double TransitionDensity::log_pdf(double x, double scale) const {
    return clf::log_pdf(unit_, x / scale, grid_) - std::log(scale);
}

double log_likelihood(const ModelParams& p, const GrowthSeries& g, double dt, const TransitionDensity& density) {
    const Potential pot = p.potential();
    double ll = 0.0;
    int last_gap = 0;
    double h = 0.0, scale = 0.0;
    for (std::size_t t = 1; t < g.size(); ++t) {
        const int gap = g.years[t] - g.years[t - 1];
        if (gap != last_gap) {
            last_gap = gap;
            h = dt * gap;
            scale = p.D * std::pow(h, 1.0 / p.mu);
        }
        ll += density.log_pdf(g.rates[t] - drift_flow(pot, g.rates[t - 1], h), scale);
    }
    return ll;
}

}  // namespace clf::detail
