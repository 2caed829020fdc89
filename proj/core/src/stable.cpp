#include "clf/stable.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "clf/error.hpp"
#include "fft.hpp"

namespace clf {
namespace {

using std::numbers::pi;

constexpr double kNyquistBound = 1e-8;    // char_fn at Nyquist must be below this
constexpr double kSpectrumCutoff = 1e-12; // char_fn values below this are dropped
constexpr int kImageTerms = 2;            // tail-series terms used for periodic images
constexpr std::size_t kImageNodes = 64;   // image correction is smooth; tabulate then interpolate

// sum_{j>=0} (a + j)^(-s) for s > 1, a > 0 (Euler-Maclaurin after 9 direct terms).
double hurwitz_zeta(double s, double a) {
    constexpr int direct = 9;
    double sum = 0.0;
    for (int j = 0; j < direct; ++j) sum += std::pow(a + j, -s);
    const double x = a + direct;
    const double xs = std::pow(x, -s);
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    double t = s * xs / x;
    sum += t / 12.0;
    t *= (s + 1.0) * (s + 2.0) / (x * x);
    sum -= t / 720.0;
    t *= (s + 3.0) * (s + 4.0) / (x * x);
    sum += t / 30240.0;
    return sum;
}

// k-th coefficient of the unit-scale tail series.
double series_coefficient(double mu, int k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * std::tgamma(k * mu + 1.0) / std::tgamma(k + 1.0) * std::sin(k * pi * mu / 2.0) / pi;
}

// Unit-scale series at y > 0.
double standard_tail(double mu, double y, int terms) {
    double sum = 0.0;
    for (int k = 1; k <= terms; ++k) sum += series_coefficient(mu, k) * std::pow(y, -(k * mu + 1.0));
    return sum;
}

double tail_log_density(const StableParams& p, double x) {
    const double s = p.scale();
    const double y = std::abs(x) / s;
    if (p.mu() == 2.0) return -0.25 * y * y - std::log(2.0 * s * std::sqrt(pi));
    double f = standard_tail(p.mu(), y, 4);
    const double lead = tail_coefficient(p.mu()) * std::pow(y, -(p.mu() + 1.0));
    if (!(f > 0.0)) f = lead;
    return std::log(f) - std::log(s);
}

}  // namespace

StableParams::StableParams(double mu, double scale) : mu_(mu), scale_(scale) {
    if (!(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("stable index mu must lie in (0, 2]");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidArgument("stable scale must be positive and finite");
}

double char_fn(const StableParams& params, double k) {
    return std::exp(-std::pow(params.scale() * std::abs(k), params.mu()));
}

double sample_standard(double mu, Rng& rng) {
    const double v = pi * (uniform_open(rng) - 0.5);
    const double w = -std::log(uniform_open(rng));
    if (mu == 1.0) return std::tan(v);
    if (mu == 2.0) return 2.0 * std::sin(v) * std::sqrt(w);
    return std::sin(mu * v) / std::pow(std::cos(v), 1.0 / mu) *
           std::pow(std::cos((1.0 - mu) * v) / w, (1.0 - mu) / mu);
}

double sample(const StableParams& params, Rng& rng) {
    return params.scale() * sample_standard(params.mu(), rng);
}

double tail_coefficient(double mu) {
    return std::sin(pi * mu / 2.0) * std::tgamma(1.0 + mu) / pi;
}

double tail_density(const StableParams& params, double x, int terms) {
    if (params.mu() == 2.0 || x == 0.0) return 0.0;
    const double s = params.scale();
    return standard_tail(params.mu(), std::abs(x) / s, terms) / s;
}

GridSpec default_pdf_grid(const StableParams& params) {
    const double half = 200.0 * params.scale();
    return {-half, half, (std::size_t{1} << 16) + 1};
}

DensityGrid pdf_grid(const StableParams& params, const GridSpec& grid) {
    grid.validate();
    if (grid.n_points % 2 == 0 || grid.n_points < 5)
        throw InvalidArgument("pdf_grid needs an odd number (>= 5) of nodes so that 0 is a node");
    if (std::abs(grid.x_min + grid.x_max) > 1e-9 * grid.x_max)
        throw InvalidArgument("pdf_grid needs a grid symmetric about 0");

    const double mu = params.mu();
    const double s = params.scale();
    const std::size_t half = (grid.n_points - 1) / 2;
    const double width = grid.x_max / s;  // half-width in unit-scale coordinates
    const double dx = width / static_cast<double>(half);
    const double k_nyquist = pi / dx;
    if (std::exp(-std::pow(k_nyquist, mu)) >= kNyquistBound)
        throw GridTooNarrow("grid spacing too coarse: char_fn at Nyquist exceeds 1e-8");

    // Trapezoidal Fourier cosine inversion on [0, k_nyquist] via DCT-I.
    const double dk = pi / width;
    std::vector<double> f(half + 1, 0.0);
    for (std::size_t m = 0; m <= half; ++m) {
        const double phi = std::exp(-std::pow(static_cast<double>(m) * dk, mu));
        if (phi < kSpectrumCutoff) break;
        f[m] = phi;
    }
    detail::dct1(f);
    for (double& v : f) v *= dk / (2.0 * pi);

    // The inversion returns the periodization sum_n f(x + n P), P = 2 * width.
    // Remove the images n != 0 using the tail series summed with Hurwitz zeta.
    if (mu < 2.0) {
        const double period = 2.0 * width;
        std::array<double, kImageTerms> coef{};
        std::array<double, kImageTerms> expo{};
        for (int k = 1; k <= kImageTerms; ++k) {
            coef[k - 1] = series_coefficient(mu, k);
            expo[k - 1] = k * mu + 1.0;
        }
        auto images = [&](double x) {
            double a = 0.0;
            for (int k = 0; k < kImageTerms; ++k)
                a += coef[k] * std::pow(period, -expo[k]) *
                     (hurwitz_zeta(expo[k], 1.0 + x / period) + hurwitz_zeta(expo[k], 1.0 - x / period));
            return a;
        };
        std::array<double, kImageNodes + 1> table{};
        for (std::size_t c = 0; c <= kImageNodes; ++c)
            table[c] = images(width * static_cast<double>(c) / kImageNodes);
        for (std::size_t j = 0; j <= half; ++j) {
            const double u = static_cast<double>(j) / static_cast<double>(half) * kImageNodes;
            const std::size_t c = std::min<std::size_t>(static_cast<std::size_t>(u), kImageNodes - 1);
            const double t = u - static_cast<double>(c);
            f[j] -= (1.0 - t) * table[c] + t * table[c + 1];
        }
    }

    std::vector<double> values(grid.n_points);
    for (std::size_t j = 0; j <= half; ++j) {
        values[half + j] = f[j] / s;
        values[half - j] = f[j] / s;
    }

    const double h = grid.spacing();
    auto trapezoid = [&](const std::vector<double>& v) {
        double acc = 0.5 * (v.front() + v.back());
        for (std::size_t i = 1; i + 1 < v.size(); ++i) acc += v[i];
        return acc * h;
    };
    const double before = trapezoid(values);
    for (double& v : values) v = std::max(v, 0.0);
    const double after = trapezoid(values);
    if (after > 0.0 && before > 0.0)
        for (double& v : values) v *= before / after;
    return {grid, std::move(values)};
}

double log_pdf(const StableParams& params, double x, const DensityGrid& cache) {
    if (!std::isfinite(x)) throw InvalidArgument("log_pdf needs a finite argument");
    const GridSpec& g = cache.spec();
    x = std::abs(x);  // the law and its grid are symmetric; evaluate one side only
    if (x < g.x_min || x > g.x_max) return tail_log_density(params, x);

    const auto& v = cache.values();
    const std::size_t n = v.size();
    const double peak = v[n / 2];
    const double floor = 1e-10 * peak;  // spectral truncation leaves ~1e-13 absolute error

    const double u = (x - g.x_min) / g.spacing();
    const std::size_t i = std::min(static_cast<std::size_t>(u), n - 2);
    const std::size_t first = std::clamp<std::size_t>(i, 1, n - 3) - 1;
    const double t = u - static_cast<double>(first);  // position relative to stencil start
    const double y0 = v[first], y1 = v[first + 1], y2 = v[first + 2], y3 = v[first + 3];
    if (y0 <= floor || y1 <= floor || y2 <= floor || y3 <= floor) {
        const double lin = cache.value_at(x);
        return lin > floor ? std::log(lin) : tail_log_density(params, x);
    }
    const double l0 = std::log(y0), l1 = std::log(y1), l2 = std::log(y2), l3 = std::log(y3);
    // Cubic Lagrange through nodes at 0, 1, 2, 3.
    const double a = t - 1.0, b = t - 2.0, c = t - 3.0;
    return -l0 * a * b * c / 6.0 + l1 * t * b * c / 2.0 - l2 * t * a * c / 2.0 + l3 * t * a * b / 6.0;
}

}  // namespace clf
