#include <algorithm>
#include <cmath>
#include <numbers>

#include "clf/error.hpp"
#include "clf/stationary.hpp"
#include "clf/stats.hpp"
#include "fft.hpp"

namespace clf {
namespace {

constexpr double kDirectWorkLimit = 2e7;  // samples x nodes below which kernels are summed exactly

double gaussian(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

std::vector<double> kde_direct(std::span<const double> samples, double h, const GridSpec& grid) {
    std::vector<double> v(grid.n_points, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double x = grid.x(i);
        double acc = 0.0;
        for (double s : samples) acc += gaussian((x - s) / h);
        v[i] = acc / h;
    }
    return v;
}

std::vector<double> kde_binned(std::span<const double> samples, double h, const GridSpec& grid) {
    const std::size_t g = grid.n_points;
    const double dx = grid.spacing();
    std::vector<double> counts(g, 0.0);
    for (double s : samples) {
        const double u = (s - grid.x_min) / dx;
        if (!(u >= 0.0) || u > static_cast<double>(g - 1)) continue;
        const auto i = std::min(static_cast<std::size_t>(u), g - 2);
        const double t = u - static_cast<double>(i);
        counts[i] += 1.0 - t;
        counts[i + 1] += t;
    }

    const auto reach = std::min<std::size_t>(g - 1, static_cast<std::size_t>(std::ceil(8.0 * h / dx)));
    std::size_t size = 2;
    while (size < g + 2 * reach + 1) size *= 2;

    detail::RealFft data(size), kernel(size);
    auto dr = data.real();
    std::fill(dr.begin(), dr.end(), 0.0);
    std::copy(counts.begin(), counts.end(), dr.begin());
    auto kr = kernel.real();
    std::fill(kr.begin(), kr.end(), 0.0);
    for (std::size_t m = 0; m <= reach; ++m) {
        const double k = gaussian(static_cast<double>(m) * dx / h) / h;
        kr[m] = k;
        if (m > 0) kr[size - m] = k;
    }
    data.forward();
    kernel.forward();
    auto ds = data.spectrum();
    auto ks = kernel.spectrum();
    for (std::size_t m = 0; m < ds.size(); ++m) ds[m] *= ks[m] / static_cast<double>(size);
    data.inverse();
    std::vector<double> v(g);
    for (std::size_t i = 0; i < g; ++i) v[i] = std::max(0.0, dr[i]);
    return v;
}

}  // namespace

DensityGrid kde(std::span<const double> samples, double bandwidth, const GridSpec& grid) {
    grid.validate();
    if (samples.empty()) throw InsufficientData("kde needs at least one sample");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) throw InvalidArgument("kde bandwidth must be positive");
    for (double s : samples)
        if (!std::isfinite(s)) throw InvalidArgument("kde samples must be finite");

    const double work = static_cast<double>(samples.size()) * static_cast<double>(grid.n_points);
    std::vector<double> v = work <= kDirectWorkLimit ? kde_direct(samples, bandwidth, grid)
                                                     : kde_binned(samples, bandwidth, grid);
    for (double& x : v) x /= static_cast<double>(samples.size());
    DensityGrid out(grid, std::move(v));
    if (!(out.mass() > 0.0)) throw InvalidArgument("no kernel mass falls on the kde grid");
    return out.normalized();
}

double silverman_bandwidth(std::span<const double> samples) {
    if (samples.size() < 2) throw InsufficientData("silverman_bandwidth needs at least 2 samples");
    const double sd = stats::std_dev(samples);
    const double spread_iqr = stats::iqr(samples) / 1.34;
    const double a = spread_iqr > 0.0 ? std::min(sd, spread_iqr) : sd;
    if (!(a > 0.0)) throw DegenerateSample("silverman_bandwidth: sample has zero spread");
    return 0.9 * a * std::pow(static_cast<double>(samples.size()), -0.2);
}

}  // namespace clf
