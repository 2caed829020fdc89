#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "clf/growth.hpp"

namespace clf {

struct CcdfPoint {
    double x;
    double probability;  // fraction of samples >= x
};

/// Empirical survival function at each distinct sample value, ascending in x.
/// Samples must be positive.
std::vector<CcdfPoint> ccdf(std::span<const double> samples);

/// Left-tail magnitudes pivot - r for every rate r < pivot.
std::vector<double> left_tail_transform(const GrowthSeries& g, double pivot = 1.5);
std::vector<double> left_tail_transform(std::span<const double> rates, double pivot = 1.5);
/// Strictly positive rates.
std::vector<double> right_tail_values(std::span<const double> rates);

struct TailFitResult {
    double nu_hat = 0.0;       // CCDF exponent
    double se = 0.0;           // nu_hat / sqrt(n_tail)
    double x_min = 0.0;
    std::size_t n_tail = 0;    // samples strictly above x_min
    double ks_distance = 0.0;  // sup distance between tail ECDF and the fitted law
};

/// Continuous Hill MLE over samples strictly above x_min.
TailFitResult fit_power_law(std::span<const double> samples, double x_min);

struct XminOptions {
    std::size_t min_tail = 10;
    std::size_t max_candidates = 1000;  // beyond this, candidates are thinned to log-spaced tail counts
    unsigned threads = 0;
};

/// KS-optimal cutoff among observed sample values leaving at least min_tail points above it.
double select_xmin(std::span<const double> samples, const XminOptions& options = {});

/// select_xmin followed by fit_power_law.
TailFitResult fit_tail(std::span<const double> samples, const XminOptions& options = {});

/// Stretched-exponential tail above x_min, CCDF(x) = exp(-(x/d)^c + (x_min/d)^c).
/// Internally parameterized by c and rate b = c (x_min/d)^c so that c -> 0 with b fixed
/// is the power law with exponent b.
struct StretchedExpFit {
    double c = 0.0;
    double d = 0.0;     // 0 when c = 0 (scale undefined on the boundary)
    double rate = 0.0;  // b
    double log_lik = 0.0;
    bool on_boundary = false;
};

StretchedExpFit fit_stretched_exponential(std::span<const double> samples, double x_min);

/// Power-law log-likelihood of the samples above x_min at exponent nu.
double power_law_log_likelihood(std::span<const double> samples, double x_min, double nu);

struct LrTestResult {
    double log_lik_pl = 0.0;
    double log_lik_se = 0.0;
    double statistic = 0.0;
    double p_value = 1.0;
};

/// Power law (c = 0) against stretched exponential. The null law of the statistic is
/// the boundary mixture 1/2 delta_0 + 1/2 chi2(1).
LrTestResult lr_test_pl_vs_se(std::span<const double> samples, double x_min);

/// Upper tail probability of 1/2 delta_0 + 1/2 chi2(1).
double boundary_mixture_pvalue(double statistic);

}  // namespace clf
