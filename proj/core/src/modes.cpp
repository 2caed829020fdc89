#include <algorithm>

#include "clf/error.hpp"
#include "clf/stationary.hpp"

namespace clf {

ModeReport find_modes(const DensityGrid& density, double min_prominence) {
    if (!(min_prominence >= 0.0)) throw InvalidArgument("min_prominence must be nonnegative");
    const auto& v = density.values();
    const std::size_t n = v.size();
    ModeReport report;
    if (n < 3) return report;
    const double peak = *std::max_element(v.begin(), v.end());
    if (!(peak > 0.0)) return report;

    std::size_t i = 1;
    while (i + 1 < n) {
        if (!(v[i] > v[i - 1])) {
            ++i;
            continue;
        }
        // A run of equal values bordered by lower ones on both sides is one maximum.
        std::size_t last = i;
        while (last + 1 < n && v[last + 1] == v[i]) ++last;
        if (last + 1 >= n || !(v[last + 1] < v[i])) {
            i = last + 1;
            continue;
        }
        const double height = v[i];
        double left_min = height;
        for (std::size_t j = i; j-- > 0;) {
            if (v[j] > height) break;
            left_min = std::min(left_min, v[j]);
        }
        double right_min = height;
        for (std::size_t j = last + 1; j < n; ++j) {
            if (v[j] > height) break;
            right_min = std::min(right_min, v[j]);
        }
        if (height - std::max(left_min, right_min) > min_prominence * peak) {
            report.locations.push_back(0.5 * (density.x(i) + density.x(last)));
            report.densities.push_back(height);
        }
        i = last + 1;
    }
    report.is_bimodal = report.locations.size() == 2;
    return report;
}

}  // namespace clf
