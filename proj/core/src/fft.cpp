#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>

#include "clf/error.hpp"

namespace clf::detail {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Dct1Plan {
    explicit Dct1Plan(std::size_t n) : size(n) {
        buffer = fftw_alloc_real(n);
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_r2r_1d(static_cast<int>(n), buffer, buffer, FFTW_REDFT00, FFTW_ESTIMATE);
    }
    ~Dct1Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan);
        fftw_free(buffer);
    }
    Dct1Plan(const Dct1Plan&) = delete;
    Dct1Plan& operator=(const Dct1Plan&) = delete;

    std::size_t size;
    double* buffer = nullptr;
    fftw_plan plan = nullptr;
};

}  // namespace

void dct1(std::span<double> data) {
    if (data.size() < 2) throw InvalidArgument("dct1 needs at least 2 points");
    thread_local std::map<std::size_t, std::unique_ptr<Dct1Plan>> cache;
    auto& slot = cache[data.size()];
    if (!slot) slot = std::make_unique<Dct1Plan>(data.size());
    std::copy(data.begin(), data.end(), slot->buffer);
    fftw_execute(slot->plan);
    std::copy(slot->buffer, slot->buffer + data.size(), data.begin());
}

struct RealFft::Impl {
    double* real = nullptr;
    fftw_complex* spectrum = nullptr;
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

RealFft::RealFft(std::size_t n) : n_(n), impl_(std::make_unique<Impl>()) {
    if (n < 2) throw InvalidArgument("RealFft size must be >= 2");
    impl_->real = fftw_alloc_real(n);
    impl_->spectrum = fftw_alloc_complex(n / 2 + 1);
    std::fill(impl_->real, impl_->real + n, 0.0);
    std::lock_guard lock(planner_mutex());
    impl_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), impl_->real, impl_->spectrum, FFTW_ESTIMATE);
    impl_->inverse = fftw_plan_dft_c2r_1d(static_cast<int>(n), impl_->spectrum, impl_->real, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(impl_->forward);
    fftw_destroy_plan(impl_->inverse);
    fftw_free(impl_->real);
    fftw_free(impl_->spectrum);
}

std::span<double> RealFft::real() noexcept { return {impl_->real, n_}; }

std::span<std::complex<double>> RealFft::spectrum() noexcept {
    return {reinterpret_cast<std::complex<double>*>(impl_->spectrum), n_ / 2 + 1};
}

void RealFft::forward() { fftw_execute(impl_->forward); }

// c2r destroys its input; callers always rebuild the spectrum before the next inverse.
void RealFft::inverse() { fftw_execute(impl_->inverse); }

}  // namespace clf::detail
