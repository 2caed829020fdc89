#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "clf/random.hpp"
#include "clf/stable.hpp"

namespace clf {

/// Confining well V(r) = (alpha/beta) |r - r0|^beta.
class Potential {
public:
    /// Throws InvalidArgument unless alpha > 0, beta > 0 and r0 finite.
    Potential(double alpha, double beta, double r0);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }
    double r0() const noexcept { return r0_; }

private:
    double alpha_;
    double beta_;
    double r0_;
};

struct SimConfig {
    double dt = 0.01;
    std::size_t n_steps = 100000;
    std::size_t burn_in = 10000;
    std::size_t thin = 1;
    double r_init = 0.0;

    /// Throws InvalidArgument on dt <= 0, thin == 0 or burn_in >= n_steps.
    void validate() const;
    /// Number of points simulate() keeps: floor((n_steps - burn_in) / thin).
    std::size_t kept_points() const noexcept;

    /// burn_in defaults to 10% of n_steps.
    static SimConfig with_default_burn_in(double dt, std::size_t n_steps, std::size_t thin = 1, double r_init = 0.0);
};

struct Trajectory {
    std::vector<double> times;
    std::vector<double> rates;
};

double potential_value(const Potential& p, double r);

/// -dV/dr; zero at r = r0 for every beta.
double force(const Potential& p, double r);

/// Exact solution at time t >= 0 of dr/dt = force(p, r) started from r.
double drift_flow(const Potential& p, double r, double t);

/// Inverse of drift_flow: the start point that flows to r after time t. For beta > 2
/// points far from r0 have no finite preimage and map to +-infinity.
double drift_flow_backward(const Potential& p, double r, double t);

/// One split-step: exact drift flow over dt, then a stable increment of scale D dt^(1/mu).
double step(const Potential& p, const StableParams& noise, double r, double dt, Rng& rng);

/// Iterates step() cfg.n_steps times, drops the first cfg.burn_in states and keeps every
/// cfg.thin-th of the rest. Throws InvalidArgument when no point would be kept.
Trajectory simulate(const Potential& p, const StableParams& noise, const SimConfig& cfg, Rng& rng);

/// Same scheme with unit-scale noise draws supplied by `draw` (scaled by D dt^(1/mu) internally).
Trajectory simulate_with(const Potential& p, const StableParams& noise, const SimConfig& cfg,
                         const std::function<double()>& draw);

}  // namespace clf
