#include <algorithm>
#include <array>
#include <cmath>

#include "clf/error.hpp"
#include "clf/growth.hpp"
#include "clf/stats.hpp"

namespace clf {
namespace {

// MODWT filters: orthonormal D4 filters divided by sqrt(2).
struct Filters {
    std::array<double, 4> low{};
    std::array<double, 4> high{};
};

const Filters& d4() {
    static const Filters f = [] {
        Filters out;
        const double s3 = std::sqrt(3.0);
        const double norm = 4.0 * std::sqrt(2.0) * std::sqrt(2.0);
        out.low = {(1 + s3) / norm, (3 + s3) / norm, (3 - s3) / norm, (1 - s3) / norm};
        for (std::size_t l = 0; l < 4; ++l) out.high[l] = ((l % 2 == 0) ? 1.0 : -1.0) * out.low[3 - l];
        return out;
    }();
    return f;
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
    const auto m = static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(((i % m) + m) % m);
}

}  // namespace

ModwtDecomposition modwt(const std::vector<double>& x, std::size_t levels) {
    if (levels == 0) throw InvalidArgument("modwt needs at least one level");
    const std::size_t n = x.size();
    if (n < (std::size_t{1} << levels)) throw InsufficientData("series too short for the requested wavelet levels");
    const auto& f = d4();
    ModwtDecomposition out;
    std::vector<double> v = x;
    for (std::size_t j = 1; j <= levels; ++j) {
        const auto stride = static_cast<std::ptrdiff_t>(std::size_t{1} << (j - 1));
        std::vector<double> w(n, 0.0), next(n, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t l = 0; l < 4; ++l) {
                const double s = v[wrap(static_cast<std::ptrdiff_t>(t) - stride * static_cast<std::ptrdiff_t>(l), n)];
                w[t] += f.high[l] * s;
                next[t] += f.low[l] * s;
            }
        }
        out.details.push_back(std::move(w));
        v = std::move(next);
    }
    out.smooth = std::move(v);
    return out;
}

std::vector<double> inverse_modwt(const ModwtDecomposition& d) {
    const auto& f = d4();
    const std::size_t n = d.smooth.size();
    std::vector<double> v = d.smooth;
    for (std::size_t j = d.details.size(); j >= 1; --j) {
        const auto stride = static_cast<std::ptrdiff_t>(std::size_t{1} << (j - 1));
        const auto& w = d.details[j - 1];
        if (w.size() != n) throw InvalidArgument("inconsistent MODWT decomposition");
        std::vector<double> prev(n, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            for (std::size_t l = 0; l < 4; ++l) {
                const std::size_t k = wrap(static_cast<std::ptrdiff_t>(t) + stride * static_cast<std::ptrdiff_t>(l), n);
                prev[t] += f.high[l] * w[k] + f.low[l] * v[k];
            }
        }
        v = std::move(prev);
    }
    return v;
}

GrowthSeries wavelet_smooth(const GrowthSeries& series, std::size_t levels, ThresholdMode mode) {
    series.validate();
    auto dec = modwt(series.rates, levels);

    const auto& finest = dec.details.front();
    const double med = stats::median(finest);
    std::vector<double> dev(finest.size());
    std::transform(finest.begin(), finest.end(), dev.begin(), [&](double w) { return std::abs(w - med); });
    const double sigma = stats::median(dev) / 0.6745;
    const double lambda = sigma * std::sqrt(2.0 * std::log(static_cast<double>(series.size())));

    for (auto& level : dec.details) {
        for (double& w : level) {
            if (mode == ThresholdMode::soft)
                w = std::copysign(std::max(std::abs(w) - lambda, 0.0), w);
            else if (std::abs(w) <= lambda)
                w = 0.0;
        }
    }
    return {series.years, inverse_modwt(dec)};
}

}  // namespace clf
