#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace clf {

/// Uniform grid of `n_points` nodes from x_min to x_max inclusive.
struct GridSpec {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t n_points = 2;

    /// Throws InvalidArgument unless finite bounds, x_max > x_min and n_points >= 2.
    void validate() const;
    double spacing() const noexcept { return (x_max - x_min) / static_cast<double>(n_points - 1); }
    double x(std::size_t i) const noexcept { return x_min + static_cast<double>(i) * spacing(); }
    double center() const noexcept { return 0.5 * (x_min + x_max); }
};

/// Nonnegative density sampled on a GridSpec.
class DensityGrid {
public:
    DensityGrid(GridSpec spec, std::vector<double> values);

    /// Tabulates f at every node (negative values are clipped to 0).
    static DensityGrid from_function(const GridSpec& spec, const std::function<double(double)>& f);

    const GridSpec& spec() const noexcept { return spec_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    double x(std::size_t i) const noexcept { return spec_.x(i); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Linear interpolation; 0 outside [x_min, x_max].
    double value_at(double x) const noexcept;

    /// Trapezoidal integral over the grid.
    double mass() const noexcept;

    /// Copy rescaled to unit trapezoidal mass.
    DensityGrid normalized() const;

    /// Trapezoidal CDF at each node, starting at 0.
    std::vector<double> cdf() const;

private:
    GridSpec spec_;
    std::vector<double> values_;
};

/// Trapezoidal L1 distance; both grids must share the same spec.
double l1_distance(const DensityGrid& a, const DensityGrid& b);

}  // namespace clf
