#include "clf/dynamics.hpp"

#include <cmath>

#include "clf/error.hpp"

namespace clf {
namespace {

template <typename Draw>
Trajectory integrate(const Potential& p, const StableParams& noise, const SimConfig& cfg, Draw&& draw) {
    cfg.validate();
    if (cfg.kept_points() == 0) throw InvalidArgument("simulation keeps no points after burn-in and thinning");
    const double increment_scale = noise.scale() * std::pow(cfg.dt, 1.0 / noise.mu());

    Trajectory out;
    out.times.reserve(cfg.kept_points());
    out.rates.reserve(cfg.kept_points());
    double r = cfg.r_init;
    for (std::size_t i = 1; i <= cfg.n_steps; ++i) {
        r = drift_flow(p, r, cfg.dt) + increment_scale * draw();
        if (i > cfg.burn_in && (i - cfg.burn_in) % cfg.thin == 0) {
            out.times.push_back(static_cast<double>(i) * cfg.dt);
            out.rates.push_back(r);
        }
    }
    return out;
}

}  // namespace

Potential::Potential(double alpha, double beta, double r0) : alpha_(alpha), beta_(beta), r0_(r0) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidArgument("potential strength alpha must be positive");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidArgument("potential steepness beta must be positive");
    if (!std::isfinite(r0)) throw InvalidArgument("potential midpoint r0 must be finite");
}

void SimConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("time step dt must be positive");
    if (thin == 0) throw InvalidArgument("thin must be at least 1");
    if (burn_in >= n_steps) throw InvalidArgument("burn_in must be smaller than n_steps");
    if (!std::isfinite(r_init)) throw InvalidArgument("r_init must be finite");
}

std::size_t SimConfig::kept_points() const noexcept {
    if (thin == 0 || burn_in >= n_steps) return 0;
    return (n_steps - burn_in) / thin;
}

SimConfig SimConfig::with_default_burn_in(double dt, std::size_t n_steps, std::size_t thin, double r_init) {
    return {dt, n_steps, n_steps / 10, thin, r_init};
}

double potential_value(const Potential& p, double r) {
    return p.alpha() / p.beta() * std::pow(std::abs(r - p.r0()), p.beta());
}

double force(const Potential& p, double r) {
    const double y = r - p.r0();
    if (y == 0.0) return 0.0;
    return -std::copysign(p.alpha() * std::pow(std::abs(y), p.beta() - 1.0), y);
}

double drift_flow(const Potential& p, double r, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("drift_flow needs t >= 0");
    const double y = r - p.r0();
    if (y == 0.0 || t == 0.0) return r;
    const double beta = p.beta();
    if (beta == 2.0) return p.r0() + y * std::exp(-p.alpha() * t);

    // |y(t)|^(2-beta) = |y|^(2-beta) + alpha (beta-2) t, written through log1p so that
    // beta -> 2 reduces smoothly to exponential decay.
    const double ay = std::abs(y);
    const double z = p.alpha() * (beta - 2.0) * t * std::pow(ay, beta - 2.0);
    if (z <= -1.0) return p.r0();  // beta < 2: reaches r0 in finite time
    const double magnitude = std::exp(std::log(ay) + std::log1p(z) / (2.0 - beta));
    return p.r0() + std::copysign(std::min(magnitude, ay), y);
}

double drift_flow_backward(const Potential& p, double r, double t) {
    if (!(t >= 0.0)) throw InvalidArgument("drift_flow_backward needs t >= 0");
    const double y = r - p.r0();
    if (y == 0.0 || t == 0.0) return r;
    const double beta = p.beta();
    if (beta == 2.0) return p.r0() + y * std::exp(p.alpha() * t);

    const double ay = std::abs(y);
    const double z = -p.alpha() * (beta - 2.0) * t * std::pow(ay, beta - 2.0);
    if (z <= -1.0) return std::copysign(INFINITY, y);  // beta > 2: enters from infinity
    const double magnitude = std::exp(std::log(ay) + std::log1p(z) / (2.0 - beta));
    return p.r0() + std::copysign(std::max(magnitude, ay), y);
}

double step(const Potential& p, const StableParams& noise, double r, double dt, Rng& rng) {
    if (!(dt > 0.0)) throw InvalidArgument("step needs dt > 0");
    return drift_flow(p, r, dt) + noise.scale() * std::pow(dt, 1.0 / noise.mu()) * sample_standard(noise.mu(), rng);
}

Trajectory simulate(const Potential& p, const StableParams& noise, const SimConfig& cfg, Rng& rng) {
    const double mu = noise.mu();
    return integrate(p, noise, cfg, [&] { return sample_standard(mu, rng); });
}

Trajectory simulate_with(const Potential& p, const StableParams& noise, const SimConfig& cfg,
                         const std::function<double()>& draw) {
    return integrate(p, noise, cfg, draw);
}

}  // namespace clf
