#include "clf/optimize.hpp"

#include <cmath>
#include <memory>
#include <mutex>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "clf/error.hpp"

namespace clf {
namespace {

constexpr double kPenalty = 1e300;

struct Context {
    const std::function<double(const std::vector<double>&)>* f;
    std::vector<double> buffer;
    std::size_t evals = 0;
};

double trampoline(const gsl_vector* v, void* params) {
    auto* ctx = static_cast<Context*>(params);
    for (std::size_t i = 0; i < ctx->buffer.size(); ++i) ctx->buffer[i] = gsl_vector_get(v, i);
    ++ctx->evals;
    double value = kPenalty;
    try {
        value = (*ctx->f)(ctx->buffer);
    } catch (const NumericalError&) {
        value = kPenalty;
    }
    return std::isfinite(value) ? std::min(value, kPenalty) : kPenalty;
}

struct VectorDeleter {
    void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

SimplexResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, std::vector<double> step,
                               const SimplexOptions& options) {
    static std::once_flag handler_once;
    std::call_once(handler_once, [] { gsl_set_error_handler_off(); });

    const std::size_t n = x0.size();
    if (n == 0 || step.size() != n) throw InvalidArgument("minimize_simplex: bad dimensions");

    Context ctx{&f, std::vector<double>(n), 0};
    gsl_multimin_function fn{&trampoline, n, &ctx};
    std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> m(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));

    SimplexResult result{x0, kPenalty, 0, false};
    for (std::size_t round = 0; round <= options.restarts; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            gsl_vector_set(x.get(), i, result.x[i]);
            gsl_vector_set(ss.get(), i, step[i]);
        }
        if (gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get()) != GSL_SUCCESS) break;
        bool converged = false;
        while (ctx.evals < options.max_evals) {
            if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
            if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m.get()), options.size_tol) == GSL_SUCCESS) {
                converged = true;
                break;
            }
        }
        const double value = gsl_multimin_fminimizer_minimum(m.get());
        const bool improved = value < result.value;
        if (improved) {
            result.value = value;
            for (std::size_t i = 0; i < n; ++i) result.x[i] = gsl_vector_get(m.get()->x, i);
        }
        result.converged = converged;
        if (!converged || (round > 0 && !improved)) break;
        // Restart with a smaller simplex to guard against premature collapse.
        for (double& s : step) s *= 0.25;
    }
    result.evals = ctx.evals;
    return result;
}

}  // namespace clf
