#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "clf/calibration.hpp"
#include "clf/error.hpp"
#include "clf/parallel.hpp"
#include "clf/stats.hpp"

namespace clf {
namespace {

ParamErrors spread(const std::vector<ModelParams>& reps) {
    auto sd = [&](auto field) {
        std::vector<double> v;
        v.reserve(reps.size());
        for (const auto& p : reps) v.push_back(p.*field);
        return stats::std_dev(v);
    };
    return {sd(&ModelParams::alpha), sd(&ModelParams::beta), sd(&ModelParams::r0), sd(&ModelParams::mu),
            sd(&ModelParams::D)};
}

}  // namespace

BootstrapResult bootstrap_errors(const GrowthSeries& g, const ModelParams& fitted, std::uint64_t seed,
                                 const BootstrapOptions& options) {
    g.validate();
    fitted.validate();
    if (options.n_boot < 20) throw InvalidArgument("bootstrap needs at least 20 replications");
    if (std::all_of(g.rates.begin(), g.rates.end(), [&](double r) { return r == g.rates.front(); }))
        throw FitFailure("series has no variation; bootstrap refits are meaningless");

    FitOptions refit;
    refit.dt = options.dt;
    refit.warm_start = fitted;
    refit.threads = 1;

    std::vector<std::optional<ModelParams>> slots(options.n_boot);
    parallel_for(options.n_boot, options.threads, [&](std::size_t i) {
        Rng rng(derive_seed(seed, i));
        const GrowthSeries sim = simulate_series(fitted, g.size(), rng, options.dt, g.years.front());
        try {
            slots[i] = fit_mle(sim, refit).params;
        } catch (const Error&) {
            slots[i].reset();
        }
    });

    BootstrapResult out;
    for (const auto& s : slots) {
        if (s)
            out.replicates.push_back(*s);
        else
            ++out.n_failed;
    }
    out.failure_fraction = static_cast<double>(out.n_failed) / static_cast<double>(options.n_boot);
    if (out.failure_fraction > options.max_failure_fraction || out.replicates.size() < 2)
        throw FitFailure("bootstrap refits failed for " + std::to_string(out.n_failed) + " of " +
                         std::to_string(options.n_boot) + " replications");
    out.se = spread(out.replicates);
    return out;
}

CalibrationResult calibrate(const GrowthSeries& g, std::uint64_t seed, const FitOptions& fit,
                            const BootstrapOptions& boot) {
    CalibrationResult result = fit_mle(g, fit);
    BootstrapOptions b = boot;
    b.dt = fit.dt;
    result.se = bootstrap_errors(g, result.params, seed, b).se;
    result.n_boot = b.n_boot;
    return result;
}

LooReport leave_one_out_stability(const GrowthSeries& g, const CalibrationResult& full, double threshold,
                                  unsigned threads) {
    g.validate();
    if (g.size() < 30) throw InsufficientData("leave-one-out needs at least 30 points");
    FitOptions refit;
    refit.warm_start = full.params;
    refit.threads = 1;

    LooReport report;
    report.entries.resize(g.size());
    parallel_for(g.size(), threads, [&](std::size_t i) {
        GrowthSeries cut;
        for (std::size_t k = 0; k < g.size(); ++k) {
            if (k == i) continue;
            cut.years.push_back(g.years[k]);
            cut.rates.push_back(g.rates[k]);
        }
        const ModelParams p = fit_mle(cut, refit).params;
        LooEntry& e = report.entries[i];
        e.year = g.years[i];
        e.shift = {std::abs(p.alpha - full.params.alpha), std::abs(p.beta - full.params.beta),
                   std::abs(p.r0 - full.params.r0), std::abs(p.mu - full.params.mu), std::abs(p.D - full.params.D)};
        auto beyond = [&](double shift, double se) { return se > 0.0 && shift > threshold * se; };
        e.flagged = beyond(e.shift.alpha, full.se.alpha) || beyond(e.shift.beta, full.se.beta) ||
                    beyond(e.shift.r0, full.se.r0) || beyond(e.shift.mu, full.se.mu) || beyond(e.shift.D, full.se.D);
    });
    for (const auto& e : report.entries) {
        report.max_shift.alpha = std::max(report.max_shift.alpha, e.shift.alpha);
        report.max_shift.beta = std::max(report.max_shift.beta, e.shift.beta);
        report.max_shift.r0 = std::max(report.max_shift.r0, e.shift.r0);
        report.max_shift.mu = std::max(report.max_shift.mu, e.shift.mu);
        report.max_shift.D = std::max(report.max_shift.D, e.shift.D);
        if (e.flagged) report.flagged_years.push_back(e.year);
    }
    return report;
}

}  // namespace clf
