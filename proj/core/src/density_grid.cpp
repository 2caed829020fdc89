#include "clf/density_grid.hpp"

#include <cmath>
#include <utility>

#include "clf/error.hpp"

namespace clf {

void GridSpec::validate() const {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_max > x_min))
        throw InvalidArgument("grid bounds must be finite with x_max > x_min");
    if (n_points < 2) throw InvalidArgument("grid needs at least 2 points");
}

DensityGrid::DensityGrid(GridSpec spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    spec_.validate();
    if (values_.size() != spec_.n_points) throw InvalidArgument("density values do not match grid size");
    for (double v : values_)
        if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("density values must be finite and nonnegative");
}

DensityGrid DensityGrid::from_function(const GridSpec& spec, const std::function<double(double)>& f) {
    spec.validate();
    std::vector<double> v(spec.n_points);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::max(0.0, f(spec.x(i)));
    return {spec, std::move(v)};
}

double DensityGrid::value_at(double x) const noexcept {
    if (!(x >= spec_.x_min && x <= spec_.x_max)) return 0.0;
    const double u = (x - spec_.x_min) / spec_.spacing();
    auto i = static_cast<std::size_t>(u);
    if (i >= values_.size() - 1) return values_.back();
    const double t = u - static_cast<double>(i);
    return (1.0 - t) * values_[i] + t * values_[i + 1];
}

double DensityGrid::mass() const noexcept {
    double s = 0.5 * (values_.front() + values_.back());
    for (std::size_t i = 1; i + 1 < values_.size(); ++i) s += values_[i];
    return s * spec_.spacing();
}

DensityGrid DensityGrid::normalized() const {
    const double m = mass();
    if (!(m > 0.0)) throw InvalidArgument("cannot normalize a density with zero mass");
    std::vector<double> v(values_);
    for (double& x : v) x /= m;
    return {spec_, std::move(v)};
}

std::vector<double> DensityGrid::cdf() const {
    std::vector<double> c(values_.size(), 0.0);
    const double h = spec_.spacing();
    for (std::size_t i = 1; i < values_.size(); ++i) c[i] = c[i - 1] + 0.5 * h * (values_[i - 1] + values_[i]);
    return c;
}

double l1_distance(const DensityGrid& a, const DensityGrid& b) {
    const auto& sa = a.spec();
    const auto& sb = b.spec();
    if (sa.n_points != sb.n_points || std::abs(sa.x_min - sb.x_min) > 1e-9 * (1.0 + std::abs(sa.x_min)) ||
        std::abs(sa.x_max - sb.x_max) > 1e-9 * (1.0 + std::abs(sa.x_max)))
        throw InvalidArgument("l1_distance needs densities on the same grid");
    const std::size_t n = a.size();
    double s = 0.5 * (std::abs(a[0] - b[0]) + std::abs(a[n - 1] - b[n - 1]));
    for (std::size_t i = 1; i + 1 < n; ++i) s += std::abs(a[i] - b[i]);
    return s * sa.spacing();
}

}  // namespace clf
