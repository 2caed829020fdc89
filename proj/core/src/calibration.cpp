#include "clf/calibration.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "clf/error.hpp"
#include "clf/optimize.hpp"
#include "clf/parallel.hpp"
#include "clf/stats.hpp"
#include "likelihood.hpp"

namespace clf {
namespace {

constexpr double kBetaFloor = 0.1;
constexpr double kMuCeiling = 2.0 - 1e-6;

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Maps between ModelParams and the unconstrained search coordinates, skipping held parameters.
class Coordinates {
public:
    explicit Coordinates(const FitOptions& o) : fixed_mu_(o.fixed_mu), fixed_beta_(o.fixed_beta) {}

    std::vector<double> to_theta(const ModelParams& p) const {
        std::vector<double> t{std::log(p.alpha)};
        if (!fixed_beta_) t.push_back(std::log(std::max(p.beta - kBetaFloor, 1e-12)));
        t.push_back(p.r0);
        if (!fixed_mu_) t.push_back(logit(std::min(p.mu, kMuCeiling) / 2.0));
        t.push_back(std::log(p.D));
        return t;
    }

    ModelParams from_theta(const std::vector<double>& t) const {
        ModelParams p;
        std::size_t i = 0;
        p.alpha = std::exp(t[i++]);
        p.beta = fixed_beta_ ? *fixed_beta_ : kBetaFloor + std::exp(t[i++]);
        p.r0 = t[i++];
        p.mu = fixed_mu_ ? *fixed_mu_ : std::min(2.0 * logistic(t[i++]), kMuCeiling);
        p.D = std::exp(t[i++]);
        return p;
    }

    std::vector<double> steps(double spread) const {
        std::vector<double> s{0.4};
        if (!fixed_beta_) s.push_back(0.3);
        s.push_back(0.25 * spread);
        if (!fixed_mu_) s.push_back(0.5);
        s.push_back(0.2);
        return s;
    }

private:
    std::optional<double> fixed_mu_;
    std::optional<double> fixed_beta_;
};

bool has_variation(const GrowthSeries& g) {
    return std::any_of(g.rates.begin(), g.rates.end(), [&](double r) { return r != g.rates.front(); });
}

double spread_of(const GrowthSeries& g) {
    const double q = stats::iqr(g.rates);
    return q > 0.0 ? q / 1.349 : stats::std_dev(g.rates);
}

// Radical inverse in base b (Halton sequence).
double halton(std::size_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    for (std::size_t i = index; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
    }
    return r;
}

bool params_ok(const ModelParams& p) {
    try {
        p.validate();
        return true;
    } catch (const InputError&) {
        return false;
    }
}

}  // namespace

void ModelParams::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("beta must be positive");
    if (!std::isfinite(r0)) throw InvalidArgument("r0 must be finite");
    if (!(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("mu must lie in (0, 2]");
    if (!(D > 0.0) || !std::isfinite(D)) throw InvalidArgument("D must be positive");
}

Exclusion exclude_extremes(const GrowthSeries& g, std::size_t k) {
    g.validate();
    if (k >= g.size()) throw InvalidArgument("exclusion count must be smaller than the series length");
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return std::abs(g.rates[a]) > std::abs(g.rates[b]); });
    std::vector<bool> drop(g.size(), false);
    for (std::size_t i = 0; i < k; ++i) drop[order[i]] = true;
    Exclusion out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (drop[i]) {
            out.excluded_years.push_back(g.years[i]);
        } else {
            out.kept.years.push_back(g.years[i]);
            out.kept.rates.push_back(g.rates[i]);
        }
    }
    return out;
}

double pseudo_log_likelihood(const ModelParams& p, const GrowthSeries& g, double dt) {
    p.validate();
    g.validate();
    if (g.size() < 2) throw InsufficientData("likelihood needs at least 2 points");
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    const detail::TransitionDensity density(p.mu);
    return detail::log_likelihood(p, g, dt, density);
}

ModelParams moment_guess(const GrowthSeries& g) {
    ModelParams p;
    p.r0 = stats::median(g.rates);
    const double rho = std::clamp(stats::autocorrelation_lag1(g.rates), 0.05, 0.95);
    p.alpha = -std::log(rho);
    p.beta = 2.0;
    p.mu = 2.0;
    std::vector<double> innovations;
    for (std::size_t t = 1; t < g.size(); ++t)
        innovations.push_back(g.rates[t] - p.r0 - rho * (g.rates[t - 1] - p.r0));
    double d = stats::iqr(innovations) / 2.0;
    if (!(d > 0.0)) d = stats::std_dev(innovations) / std::sqrt(2.0);
    if (!(d > 0.0)) throw FitFailure("series has no variation");
    p.D = d;
    return p;
}

std::vector<ModelParams> start_design(const GrowthSeries& g, std::size_t n_starts) {
    const ModelParams guess = moment_guess(g);
    const double s = spread_of(g);
    // alpha is rescaled so that the force at one spread from r0 matches the beta = 2 guess.
    auto alpha_for = [&](double beta) { return guess.alpha * std::pow(s, 2.0 - beta); };

    std::vector<ModelParams> starts;
    constexpr std::array<double, 3> mus{1.5, 1.2, 1.8};
    constexpr std::array<double, 3> betas{2.5, 2.1, 3.5};
    for (double beta : betas)
        for (double mu : mus) starts.push_back({alpha_for(beta), beta, guess.r0, mu, guess.D});
    for (std::size_t i = 1; starts.size() < n_starts; ++i) {
        const double beta = 1.6 + 2.4 * halton(i, 3);
        ModelParams p;
        p.beta = beta;
        p.alpha = alpha_for(beta) * std::exp(3.0 * (halton(i, 2) - 0.5));
        p.r0 = guess.r0 + s * (halton(i, 5) - 0.5);
        p.mu = 0.9 + 1.05 * halton(i, 7);
        p.D = guess.D * std::exp(1.4 * (halton(i, 11) - 0.5));
        starts.push_back(p);
    }
    starts.resize(std::min(starts.size(), std::max<std::size_t>(n_starts, 1)));
    return starts;
}

CalibrationResult fit_mle(const GrowthSeries& g, const FitOptions& options) {
    g.validate();
    if (g.size() < 30) throw InsufficientData("fit_mle needs at least 30 points");
    if (!(options.dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (options.fixed_mu && !(*options.fixed_mu > 0.0 && *options.fixed_mu <= 2.0))
        throw InvalidArgument("fixed mu must lie in (0, 2]");
    if (options.fixed_beta && !(*options.fixed_beta > kBetaFloor)) throw InvalidArgument("fixed beta too small");
    if (!has_variation(g)) throw FitFailure("series has no variation");

    const Coordinates coords(options);
    const double scale = 1.0 / static_cast<double>(g.size() - 1);
    auto objective = [&](const std::vector<double>& theta) {
        const ModelParams p = coords.from_theta(theta);
        if (!params_ok(p)) return std::numeric_limits<double>::infinity();
        const detail::TransitionDensity density(p.mu);
        return -scale * detail::log_likelihood(p, g, options.dt, density);
    };
    const auto steps = coords.steps(spread_of(g));

    std::vector<ModelParams> starts;
    if (options.warm_start) {
        starts.push_back(*options.warm_start);
    } else {
        starts = start_design(g, options.n_starts);
    }
    for (auto& s : starts) {
        if (options.fixed_mu) s.mu = *options.fixed_mu;
        if (options.fixed_beta) s.beta = *options.fixed_beta;
    }

    std::vector<SimplexResult> results(starts.size());
    const bool screen = starts.size() > options.n_polish;
    SimplexOptions first;
    first.max_evals = screen ? options.screen_evals : options.max_evals;
    first.restarts = screen ? 0 : 1;
    parallel_for(starts.size(), options.threads, [&](std::size_t i) {
        results[i] = minimize_simplex(objective, coords.to_theta(starts[i]), steps, first);
    });

    if (screen) {
        std::vector<std::size_t> order(results.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return results[a].value < results[b].value; });
        order.resize(options.n_polish);
        SimplexOptions polish;
        polish.max_evals = options.max_evals;
        std::vector<SimplexResult> polished(order.size());
        parallel_for(order.size(), options.threads, [&](std::size_t k) {
            polished[k] = minimize_simplex(objective, results[order[k]].x, steps, polish);
        });
        results = std::move(polished);
    }

    const auto best = std::min_element(results.begin(), results.end(),
                                       [](const SimplexResult& a, const SimplexResult& b) { return a.value < b.value; });
    if (best == results.end() || !(best->value < 1e299)) throw FitFailure("all optimizer starts failed");

    CalibrationResult out;
    out.params = coords.from_theta(best->x);
    out.log_lik = pseudo_log_likelihood(out.params, g, options.dt);
    if (!std::isfinite(out.log_lik)) throw FitFailure("non-finite likelihood at the optimum");
    out.nu_hat = out.params.beta + out.params.mu - 2.0;
    out.n_points = g.size();
    return out;
}

GrowthSeries simulate_series(const ModelParams& p, std::size_t n, Rng& rng, double dt, int first_year) {
    p.validate();
    const Potential pot = p.potential();
    const StableParams noise = p.noise();
    double r = p.r0;
    for (int i = 0; i < 200; ++i) r = step(pot, noise, r, dt, rng);
    GrowthSeries out;
    out.years.reserve(n);
    out.rates.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        r = step(pot, noise, r, dt, rng);
        out.years.push_back(first_year + static_cast<int>(i));
        out.rates.push_back(r);
    }
    return out;
}

ForceBand force_band(const ModelParams& fitted, const std::vector<ModelParams>& replicates, double r_min,
                     double r_max, std::size_t n_points) {
    if (!(r_max > r_min) || n_points < 2) throw InvalidArgument("force band needs r_max > r_min and 2+ points");
    ForceBand band;
    std::vector<double> values(replicates.size());
    for (std::size_t i = 0; i < n_points; ++i) {
        const double r = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(n_points - 1);
        band.r.push_back(r);
        band.force.push_back(force(fitted.potential(), r));
        if (replicates.empty()) {
            band.lo.push_back(band.force.back());
            band.hi.push_back(band.force.back());
            continue;
        }
        for (std::size_t k = 0; k < replicates.size(); ++k) values[k] = force(replicates[k].potential(), r);
        band.lo.push_back(stats::quantile(values, 0.16));
        band.hi.push_back(stats::quantile(values, 0.84));
    }
    return band;
}

}  // namespace clf
