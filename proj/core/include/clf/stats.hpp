#pragma once

#include <span>
#include <vector>

namespace clf::stats {

double mean(std::span<const double> xs);

/// Unbiased (n-1) sample variance.
double variance(std::span<const double> xs);
double std_dev(std::span<const double> xs);

/// Linear-interpolation quantile (Hyndman-Fan type 7) of unsorted data.
double quantile(std::span<const double> xs, double p);
/// Same, for data already sorted ascending.
double quantile_sorted(std::span<const double> sorted, double p);

double median(std::span<const double> xs);
double iqr(std::span<const double> xs);

/// Lag-1 sample autocorrelation.
double autocorrelation_lag1(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup|F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic critical value of the two-sample KS statistic at significance `alpha`.
double ks_critical_value(std::size_t n_a, std::size_t n_b, double alpha);

}  // namespace clf::stats
