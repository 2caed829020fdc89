#include "clf/tails.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

#include "clf/error.hpp"
#include "clf/parallel.hpp"

namespace clf {
namespace {

void require_positive(std::span<const double> samples) {
    for (double x : samples)
        if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("tail samples must be positive and finite");
}

// Log-excesses z_i = ln(x_i / x_min) for x_i > x_min, with the usual error checks.
std::vector<double> log_excesses(std::span<const double> samples, double x_min) {
    if (!(x_min > 0.0) || !std::isfinite(x_min)) throw InvalidArgument("x_min must be positive");
    require_positive(samples);
    std::vector<double> z;
    std::size_t at_min = 0;
    for (double x : samples) {
        if (x > x_min)
            z.push_back(std::log(x / x_min));
        else if (x == x_min)
            ++at_min;
    }
    if (z.empty() && at_min > 0) throw DegenerateSample("all tail points equal x_min");
    if (z.size() < 2) throw InsufficientData("fewer than 2 samples above x_min");
    return z;
}

// KS distance between the ECDF of sorted excess ratios z (ascending) and 1 - exp(-nu z).
double ks_distance_sorted(std::span<const double> z_sorted, double nu) {
    const double m = static_cast<double>(z_sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < z_sorted.size(); ++i) {
        const double f = -std::expm1(-nu * z_sorted[i]);
        d = std::max({d, std::abs(static_cast<double>(i + 1) / m - f), std::abs(static_cast<double>(i) / m - f)});
    }
    return d;
}

}  // namespace

std::vector<CcdfPoint> ccdf(std::span<const double> samples) {
    require_positive(samples);
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    std::vector<CcdfPoint> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i > 0 && s[i] == s[i - 1]) continue;
        out.push_back({s[i], static_cast<double>(s.size() - i) / n});
    }
    return out;
}

std::vector<double> left_tail_transform(std::span<const double> rates, double pivot) {
    std::vector<double> out;
    for (double r : rates)
        if (r < pivot) out.push_back(pivot - r);
    return out;
}

std::vector<double> left_tail_transform(const GrowthSeries& g, double pivot) {
    return left_tail_transform(std::span<const double>(g.rates), pivot);
}

std::vector<double> right_tail_values(std::span<const double> rates) {
    std::vector<double> out;
    for (double r : rates)
        if (r > 0.0) out.push_back(r);
    return out;
}

TailFitResult fit_power_law(std::span<const double> samples, double x_min) {
    auto z = log_excesses(samples, x_min);
    const double sum = std::accumulate(z.begin(), z.end(), 0.0);
    const double m = static_cast<double>(z.size());
    TailFitResult r;
    r.nu_hat = m / sum;
    r.se = r.nu_hat / std::sqrt(m);
    r.x_min = x_min;
    r.n_tail = z.size();
    std::sort(z.begin(), z.end());
    r.ks_distance = ks_distance_sorted(z, r.nu_hat);
    return r;
}

double select_xmin(std::span<const double> samples, const XminOptions& options) {
    require_positive(samples);
    const std::size_t min_tail = std::max<std::size_t>(options.min_tail, 2);
    if (samples.size() < std::max<std::size_t>(min_tail, 10))
        throw InsufficientData("select_xmin needs at least 10 samples");

    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    const std::size_t n = s.size();
    std::vector<double> logs(n);
    std::transform(s.begin(), s.end(), logs.begin(), [](double x) { return std::log(x); });

    // Candidate = index of first occurrence of each distinct value with enough points strictly above.
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && s[i] == s[i - 1]) continue;
        const std::size_t above = static_cast<std::size_t>(std::upper_bound(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(), s[i]) - s.begin());
        if (n - above >= min_tail) cand.push_back(i);
    }
    if (cand.empty()) throw InsufficientData("no cutoff leaves enough tail points");
    if (options.max_candidates > 1 && cand.size() > options.max_candidates) {
        // Keep candidates whose tail counts are log-spaced: resolution where the tail is short.
        std::vector<std::size_t> thinned;
        const double lo = std::log(static_cast<double>(min_tail));
        const double hi = std::log(static_cast<double>(n - cand.front()));
        auto tail_count = [&](std::size_t i) { return n - i; };
        for (std::size_t k = 0; k < options.max_candidates; ++k) {
            const double target = std::exp(hi - (hi - lo) * static_cast<double>(k) / static_cast<double>(options.max_candidates - 1));
            // first candidate (ascending x) whose count of points >= x is at most target
            const auto it = std::lower_bound(cand.begin(), cand.end(), target,
                                             [&](std::size_t i, double t) { return static_cast<double>(tail_count(i)) > t; });
            if (it != cand.end()) thinned.push_back(*it);
        }
        thinned.push_back(cand.front());
        std::sort(thinned.begin(), thinned.end());
        thinned.erase(std::unique(thinned.begin(), thinned.end()), thinned.end());
        cand = std::move(thinned);
    }

    std::vector<double> suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + logs[i];

    std::vector<double> dist(cand.size(), std::numeric_limits<double>::infinity());
    parallel_for(cand.size(), options.threads, [&](std::size_t c) {
        const std::size_t i = cand[c];
        const auto first = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), s[i]) - s.begin());
        const std::size_t m = n - first;
        const double lu = logs[i];
        const double sum = suffix[first] - static_cast<double>(m) * lu;
        if (!(sum > 0.0)) return;
        const double nu = static_cast<double>(m) / sum;
        double d = 0.0;
        for (std::size_t k = first; k < n; ++k) {
            const double f = -std::expm1(-nu * (logs[k] - lu));
            const double a = static_cast<double>(k - first);
            d = std::max({d, std::abs((a + 1.0) / static_cast<double>(m) - f), std::abs(a / static_cast<double>(m) - f)});
        }
        dist[c] = d;
    });
    const auto best = std::min_element(dist.begin(), dist.end());  // first minimum = smallest x_min on ties
    if (!std::isfinite(*best)) throw DegenerateSample("tail sample has no spread");
    return s[cand[static_cast<std::size_t>(best - dist.begin())]];
}

TailFitResult fit_tail(std::span<const double> samples, const XminOptions& options) {
    return fit_power_law(samples, select_xmin(samples, options));
}

double power_law_log_likelihood(std::span<const double> samples, double x_min, double nu) {
    const auto z = log_excesses(samples, x_min);
    double ll = 0.0;
    for (double zi : z) ll += std::log(nu) - std::log(x_min) - zi - nu * zi;
    return ll;
}

StretchedExpFit fit_stretched_exponential(std::span<const double> samples, double x_min) {
    const auto z = log_excesses(samples, x_min);
    const double m = static_cast<double>(z.size());
    const double sum_z = std::accumulate(z.begin(), z.end(), 0.0);
    const double sum_z2 = std::inner_product(z.begin(), z.end(), z.begin(), 0.0);
    const double z_max = *std::max_element(z.begin(), z.end());
    if (!(sum_z > 0.0)) throw DegenerateSample("tail sample has no spread");
    const double sum_log_x = sum_z + m * std::log(x_min);

    // S(c) = sum (e^{c z} - 1)/c; b(c) = m / S(c); profile l(c) = m ln b - sum ln x + c sum z - m.
    auto profile = [&](double c) {
        double s = 0.0;
        if (c == 0.0)
            s = sum_z;
        else
            for (double zi : z) s += std::expm1(c * zi) / c;
        return m * std::log(m / s) - sum_log_x + c * sum_z - m;
    };
    auto rate_at = [&](double c) {
        if (c == 0.0) return m / sum_z;
        double s = 0.0;
        for (double zi : z) s += std::expm1(c * zi) / c;
        return m / s;
    };

    StretchedExpFit fit;
    // Profile slope at c = 0; nonpositive means the maximum is on the boundary.
    const double slope0 = sum_z - m * 0.5 * sum_z2 / sum_z;
    double c_hat = 0.0;
    if (slope0 > 0.0) {
        const double c_max = std::min(50.0, 600.0 / z_max);
        constexpr int kScan = 64;
        double best_c = 0.0, best_l = profile(0.0);
        for (int k = 1; k <= kScan; ++k) {
            const double c = c_max * std::pow(static_cast<double>(k) / kScan, 3.0);
            const double l = profile(c);
            if (l > best_l) {
                best_l = l;
                best_c = c;
            }
        }
        auto idx = [&](double c) { return std::cbrt(c / c_max) * kScan; };
        const double k0 = std::round(idx(best_c));
        const double lo = c_max * std::pow(std::max(k0 - 1.0, 0.0) / kScan, 3.0);
        const double hi = c_max * std::pow(std::min(k0 + 1.0, double(kScan)) / kScan, 3.0);
        const auto res = boost::math::tools::brent_find_minima([&](double c) { return -profile(c); }, lo, hi, 52);
        c_hat = -res.second >= best_l ? res.first : best_c;
    }
    fit.c = c_hat;
    fit.rate = rate_at(c_hat);
    fit.log_lik = profile(c_hat);
    fit.on_boundary = c_hat == 0.0;
    fit.d = c_hat > 0.0 ? x_min * std::pow(c_hat / fit.rate, 1.0 / c_hat) : 0.0;
    if (!std::isfinite(fit.log_lik) || !std::isfinite(fit.rate))
        throw NonConvergence("stretched-exponential fit did not converge");
    return fit;
}

double boundary_mixture_pvalue(double statistic) {
    if (!(statistic > 0.0)) return 1.0;
    return 0.5 * std::erfc(std::sqrt(statistic / 2.0));
}

LrTestResult lr_test_pl_vs_se(std::span<const double> samples, double x_min) {
    const auto pl = fit_power_law(samples, x_min);
    const auto se = fit_stretched_exponential(samples, x_min);
    LrTestResult r;
    r.log_lik_pl = power_law_log_likelihood(samples, x_min, pl.nu_hat);
    r.log_lik_se = std::max(se.log_lik, r.log_lik_pl);
    r.statistic = se.on_boundary ? 0.0 : std::max(0.0, 2.0 * (r.log_lik_se - r.log_lik_pl));
    r.p_value = boundary_mixture_pvalue(r.statistic);
    return r;
}

}  // namespace clf
