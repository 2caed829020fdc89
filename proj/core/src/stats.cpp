#include "clf/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clf/error.hpp"

namespace clf::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw InsufficientData("mean of empty sample");
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
    if (xs.size() < 2) throw InsufficientData("variance needs at least 2 values");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return ss / static_cast<double>(xs.size() - 1);
}

double std_dev(std::span<const double> xs) { return std::sqrt(variance(xs)); }

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw InsufficientData("quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("quantile probability outside [0,1]");
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> xs, double p) {
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, p);
}

double median(std::span<const double> xs) { return quantile(xs, 0.5); }

double iqr(std::span<const double> xs) {
    std::vector<double> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

double autocorrelation_lag1(std::span<const double> xs) {
    if (xs.size() < 3) throw InsufficientData("autocorrelation needs at least 3 values");
    const double m = mean(xs);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        den += (xs[i] - m) * (xs[i] - m);
        if (i + 1 < xs.size()) num += (xs[i] - m) * (xs[i + 1] - m);
    }
    return den > 0.0 ? num / den : 0.0;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw InsufficientData("KS test needs non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical_value(std::size_t n_a, std::size_t n_b, double alpha) {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const double na = static_cast<double>(n_a), nb = static_cast<double>(n_b);
    return c * std::sqrt((na + nb) / (na * nb));
}

}  // namespace clf::stats
