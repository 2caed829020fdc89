#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "clf/dynamics.hpp"
#include "clf/growth.hpp"
#include "clf/random.hpp"
#include "clf/stable.hpp"

namespace clf {

/// Growth-rate model dr = -V'(r) dt + dL(mu, D) with V = (alpha/beta)|r - r0|^beta.
struct ModelParams {
    double alpha = 1.0;
    double beta = 2.0;
    double r0 = 0.0;
    double mu = 2.0;
    double D = 1.0;

    /// Throws InvalidArgument unless alpha > 0, beta > 0, 0 < mu <= 2, D > 0, r0 finite.
    void validate() const;
    Potential potential() const { return {alpha, beta, r0}; }
    StableParams noise() const { return {mu, D}; }
    /// Derived CCDF tail exponent beta + mu - 2.
    double nu() const noexcept { return beta + mu - 2.0; }
};

/// Per-parameter standard errors.
struct ParamErrors {
    double alpha = 0.0;
    double beta = 0.0;
    double r0 = 0.0;
    double mu = 0.0;
    double D = 0.0;
};

struct CalibrationResult {
    ModelParams params;
    double log_lik = 0.0;
    ParamErrors se;
    double nu_hat = 0.0;  // params.beta + params.mu - 2
    std::size_t n_boot = 0;
    std::vector<int> excluded_years;
    std::size_t n_points = 0;
};

struct Exclusion {
    GrowthSeries kept;
    std::vector<int> excluded_years;  // ascending
};

/// Drops the k rates of largest absolute value (ties broken by earlier year first).
/// Throws InvalidArgument unless k < length.
Exclusion exclude_extremes(const GrowthSeries& g, std::size_t k = 2);

/// Sum over consecutive pairs of log f_stable(r' - drift_flow(r, h); mu, D h^(1/mu)) with
/// h = dt times the year gap between the pair. Needs at least 2 points.
double pseudo_log_likelihood(const ModelParams& p, const GrowthSeries& g, double dt = 1.0);

struct FitOptions {
    std::size_t n_starts = 16;
    double dt = 1.0;
    std::size_t max_evals = 3000;          // per polished start
    std::size_t screen_evals = 200;        // per start before polishing
    std::size_t n_polish = 3;              // best screened starts polished to convergence
    std::optional<double> fixed_mu;        // hold mu at this value
    std::optional<double> fixed_beta;      // hold beta at this value
    std::optional<ModelParams> warm_start; // replaces the start design with this single start
    unsigned threads = 1;
};

/// Pseudo-likelihood maximization by simplex search in (log alpha, log(beta - 0.1), r0,
/// logit(mu/2), log D) from a deterministic multi-start design. se and n_boot are left zero.
/// Throws InsufficientData below 30 points, FitFailure when every start fails.
CalibrationResult fit_mle(const GrowthSeries& g, const FitOptions& options = {});

/// Deterministic start design (first entry is the moment-based guess's nearest grid start).
std::vector<ModelParams> start_design(const GrowthSeries& g, std::size_t n_starts);
/// Moment-based guess: r0 from the median, alpha from lag-1 autocorrelation, D from the IQR.
ModelParams moment_guess(const GrowthSeries& g);

/// Simulates n annual rates with one-step transitions (module dynamics `step` at dt),
/// after a burn-in of 200 steps started at r0.
GrowthSeries simulate_series(const ModelParams& p, std::size_t n, Rng& rng, double dt = 1.0, int first_year = 1);

struct BootstrapOptions {
    std::size_t n_boot = 200;
    double dt = 1.0;
    unsigned threads = 0;
    double max_failure_fraction = 0.2;
};

struct BootstrapResult {
    ParamErrors se;
    std::vector<ModelParams> replicates;  // successful refits, in replicate order
    std::size_t n_failed = 0;
    double failure_fraction = 0.0;
};

/// Parametric bootstrap: simulate n_boot series of the same length from `fitted`, refit
/// each warm-started at `fitted`, report per-parameter standard deviations. Replicate i
/// uses the stream derive_seed(seed, i). Throws FitFailure above the failure threshold.
BootstrapResult bootstrap_errors(const GrowthSeries& g, const ModelParams& fitted, std::uint64_t seed,
                                 const BootstrapOptions& options = {});

/// Convenience: exclusion is not applied; runs fit_mle then bootstrap_errors.
CalibrationResult calibrate(const GrowthSeries& g, std::uint64_t seed, const FitOptions& fit = {},
                            const BootstrapOptions& boot = {});

struct LooEntry {
    int year = 0;
    ParamErrors shift;  // |refit - full fit| per parameter
    bool flagged = false;
};

struct LooReport {
    std::vector<LooEntry> entries;
    ParamErrors max_shift;
    std::vector<int> flagged_years;
};

/// Refits with each point removed (warm-started at the full fit) and flags points whose
/// removal moves any parameter by more than `threshold` standard errors.
LooReport leave_one_out_stability(const GrowthSeries& g, const CalibrationResult& full, double threshold = 2.0,
                                  unsigned threads = 0);

struct ForceBand {
    std::vector<double> r;
    std::vector<double> force;
    std::vector<double> lo;  // pointwise 16th percentile over replicates
    std::vector<double> hi;  // pointwise 84th percentile
};

ForceBand force_band(const ModelParams& fitted, const std::vector<ModelParams>& replicates, double r_min,
                     double r_max, std::size_t n_points = 201);

}  // namespace clf
