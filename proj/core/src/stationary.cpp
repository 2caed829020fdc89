#include "clf/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clf/error.hpp"
#include "fft.hpp"

namespace clf {
namespace {

// Cumulative-distribution remap for one drift sub-step of fixed length.
// Cells are centred on the computational nodes; F lives on the cell edges.
class DriftRemap {
public:
    DriftRemap(const Potential& p, double first_edge, double dx, std::size_t cells, double t)
        : dx_(dx), cells_(cells), source_(cells + 1), frac_(cells + 1), cumulative_(cells + 1), slope_(cells + 1) {
        for (std::size_t j = 0; j <= cells; ++j) {
            const double edge = first_edge + static_cast<double>(j) * dx;
            const double back = drift_flow_backward(p, edge, t);
            const double u = (back - first_edge) / dx;
            if (!(u > 0.0)) {
                source_[j] = kBelow;
            } else if (!(u < static_cast<double>(cells))) {
                source_[j] = kAbove;
            } else {
                source_[j] = static_cast<std::ptrdiff_t>(u);
                frac_[j] = u - static_cast<double>(source_[j]);
            }
        }
    }

    void apply(std::vector<double>& density) {
        const std::size_t n = cells_;
        cumulative_[0] = 0.0;
        for (std::size_t i = 0; i < n; ++i) cumulative_[i + 1] = cumulative_[i] + density[i] * dx_;
        // Fritsch-Carlson slopes (harmonic mean of neighbouring cell densities).
        slope_[0] = density[0];
        slope_[n] = density[n - 1];
        for (std::size_t j = 1; j < n; ++j) {
            const double a = density[j - 1], b = density[j];
            slope_[j] = (a > 0.0 && b > 0.0) ? 2.0 * a * b / (a + b) : 0.0;
        }
        const double total = cumulative_[n];
        double previous = value_at(0, total);
        for (std::size_t i = 0; i < n; ++i) {
            const double next = value_at(i + 1, total);
            density[i] = std::max(0.0, next - previous) / dx_;
            previous = next;
        }
    }

private:
    static constexpr std::ptrdiff_t kBelow = -1;
    static constexpr std::ptrdiff_t kAbove = -2;

    double value_at(std::size_t j, double total) const {
        const std::ptrdiff_t k = source_[j];
        if (k == kBelow) return 0.0;
        if (k == kAbove) return total;
        const auto i = static_cast<std::size_t>(k);
        const double t = frac_[j];
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * cumulative_[i] + (t3 - 2 * t2 + t) * dx_ * slope_[i] +
               (-2 * t3 + 3 * t2) * cumulative_[i + 1] + (t3 - t2) * dx_ * slope_[i + 1];
    }

    double dx_;
    std::size_t cells_;
    std::vector<std::ptrdiff_t> source_;
    std::vector<double> frac_;
    std::vector<double> cumulative_;
    std::vector<double> slope_;
};

double l1_change(const std::vector<double>& a, const std::vector<double>& b, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s * dx;
}

}  // namespace

double characteristic_width(const Potential& p, const StableParams& noise) {
    const double nu = p.beta() + noise.mu() - 2.0;
    if (!(nu > 0.0)) throw InvalidArgument("beta + mu - 2 must be positive for a stationary law to exist");
    return std::pow(std::pow(noise.scale(), noise.mu()) / p.alpha(), 1.0 / nu);
}

GridSpec default_stationary_grid(const Potential& p, const StableParams& noise) {
    const double w = characteristic_width(p, noise);
    return {p.r0() - 30.0 * w, p.r0() + 30.0 * w, std::size_t{1} << 12};
}

FfpSolution solve_stationary_ffp_detailed(const Potential& p, const StableParams& noise, const GridSpec& grid,
                                          const FfpOptions& options) {
    grid.validate();
    const double w = characteristic_width(p, noise);
    const double half_width = 0.5 * (grid.x_max - grid.x_min);
    if (std::abs(grid.center() - p.r0()) > 1e-9 * (half_width + std::abs(p.r0())))
        throw InvalidArgument("stationary grid must be symmetric about r0");
    if (half_width < 5.0 * w) throw GridTooNarrow("stationary grid must span at least r0 +- 5 characteristic widths");
    const double dx = grid.spacing();
    if (dx > 0.25 * w) throw GridTooNarrow("stationary grid must resolve the characteristic width (dx <= w/4)");
    if (options.pad_factor < 1 || !(options.tol > 0.0) || !(options.courant > 0.0))
        throw InvalidArgument("invalid FFP options");

    const std::size_t n = grid.n_points;
    const std::size_t extra = ((options.pad_factor - 1) * n + 1) / 2;
    const std::size_t cells = n + 2 * extra;
    const double x0 = grid.x_min - static_cast<double>(extra) * dx;

    const double vmax = p.alpha() * std::pow(4.0 * w, p.beta() - 1.0);
    const double dt = options.courant * dx / vmax;

    DriftRemap drift(p, x0 - 0.5 * dx, dx, cells, 0.5 * dt);

    detail::RealFft fft(cells);
    std::vector<double> multiplier(fft.spectrum_size());
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(cells) * dx);
    const double diffusivity = std::pow(noise.scale(), noise.mu());
    for (std::size_t m = 0; m < multiplier.size(); ++m)
        multiplier[m] = std::exp(-diffusivity * std::pow(static_cast<double>(m) * dk, noise.mu()) * dt) /
                        static_cast<double>(cells);

    std::vector<double> density(cells);
    double total = 0.0;
    for (std::size_t i = 0; i < cells; ++i) {
        const double z = (x0 + static_cast<double>(i) * dx - p.r0()) / w;
        density[i] = 1.0 / (1.0 + z * z);
        total += density[i] * dx;
    }
    for (double& v : density) v /= total;

    constexpr std::size_t check_every = 20;
    std::vector<double> previous(density);
    std::size_t steps = 0;
    bool converged = false;
    while (steps < options.max_steps) {
        drift.apply(density);
        auto real = fft.real();
        std::copy(density.begin(), density.end(), real.begin());
        fft.forward();
        auto spec = fft.spectrum();
        for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= multiplier[m];
        fft.inverse();
        for (std::size_t i = 0; i < cells; ++i) density[i] = std::max(0.0, real[i]);
        drift.apply(density);
        ++steps;

        if (steps % check_every == 0) {
            const double rate = l1_change(density, previous, dx) / (static_cast<double>(check_every) * dt);
            if (rate < options.tol) {
                converged = true;
                break;
            }
            previous = density;
        }
    }
    if (!converged) throw NonConvergence("FFP time-marching did not reach tolerance within max_steps");

    GridSpec domain_spec{x0, x0 + static_cast<double>(cells - 1) * dx, cells};
    DensityGrid domain = DensityGrid(domain_spec, density).normalized();
    std::vector<double> inner(density.begin() + static_cast<std::ptrdiff_t>(extra),
                              density.begin() + static_cast<std::ptrdiff_t>(extra + n));
    DensityGrid restricted = DensityGrid(grid, std::move(inner)).normalized();
    return {std::move(restricted), std::move(domain), steps, dt};
}

DensityGrid solve_stationary_ffp(const Potential& p, const StableParams& noise, const GridSpec& grid,
                                 const FfpOptions& options) {
    return solve_stationary_ffp_detailed(p, noise, grid, options).density;
}

double predicted_tail_exponent(double beta, double mu) {
    if (!(beta > 0.0) || !(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("need beta > 0 and 0 < mu <= 2");
    return beta + mu - 2.0;
}

bool variance_is_finite(double beta, double mu) {
    if (!(beta > 0.0) || !(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("need beta > 0 and 0 < mu <= 2");
    return beta > 4.0 - mu;
}

double ccdf_loglog_slope(const DensityGrid& density, double center, double from, double to) {
    if (!(from > 0.0 && to > from)) throw InvalidArgument("need 0 < from < to");
    const auto cdf = density.cdf();
    const double total = cdf.back();
    auto cdf_at = [&](double x) {
        const auto& g = density.spec();
        if (x <= g.x_min) return 0.0;
        if (x >= g.x_max) return total;
        const double u = (x - g.x_min) / g.spacing();
        const auto i = std::min(static_cast<std::size_t>(u), cdf.size() - 2);
        const double t = u - static_cast<double>(i);
        return (1.0 - t) * cdf[i] + t * cdf[i + 1];
    };
    constexpr int points = 25;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < points; ++k) {
        const double x = from * std::pow(to / from, static_cast<double>(k) / (points - 1));
        const double survival = (total - cdf_at(center + x) + cdf_at(center - x)) / total;
        if (!(survival > 0.0)) throw InvalidArgument("CCDF vanishes inside the requested slope window");
        const double lx = std::log(x), ly = std::log(survival);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (points * sxy - sx * sy) / (points * sxx - sx * sx);
}

}  // namespace clf
