#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace cvpoly::detail {

namespace {

class PlanCache {
   public:
    ~PlanCache() {
        for (auto &[key, plan] : plans_) {
            fftw_destroy_plan(plan);
        }
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_pair(n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) {
            return it->second;
        }
        // Planning needs scratch arrays; FFTW_ESTIMATE leaves them untouched
        // and FFTW_UNALIGNED lets the plan run on any std::vector storage.
        std::vector<cplx> scratch(n);
        auto *buf = reinterpret_cast<fftw_complex *>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) {
            throw std::runtime_error("fftw_plan_dft_1d failed");
        }
        plans_.emplace(key, plan);
        return plan;
    }

   private:
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache &plan_cache() {
    static PlanCache cache;
    return cache;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) {
        p <<= 1;
    }
    return p;
}

}  // namespace

void fft_inplace(std::span<cplx> data, int sign) {
    if (data.empty()) {
        return;
    }
    fftw_plan plan = plan_cache().get(data.size(), sign);
    auto *buf = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

std::vector<double> angular_frequencies(std::size_t n, double dq) {
    std::vector<double> kappa(n);
    const double scale = 2.0 * std::numbers::pi / (static_cast<double>(n) * dq);
    for (std::size_t j = 0; j < n; ++j) {
        auto signed_j = static_cast<long long>(j);
        if (j > n / 2) {
            signed_j -= static_cast<long long>(n);
        }
        kappa[j] = scale * static_cast<double>(signed_j);
    }
    if (n % 2 == 0) {
        kappa[n / 2] = 0.0;
    }
    return kappa;
}

ChirpTransform::ChirpTransform(std::size_t n_in, double t0, double dt, std::size_t n_out, double w0, double dw)
    : n_in_(n_in), n_out_(n_out), fft_size_(next_pow2(n_in + n_out - 1)) {
    if (n_in == 0 || n_out == 0) {
        throw std::invalid_argument("ChirpTransform needs non-empty input and output");
    }
    // (w0 + k dw)(t0 + j dt) = w0 t0 + w0 dt j + dw t0 k + c jk, c = dw dt,
    // and jk = (j^2 + k^2 - (k - j)^2) / 2.
    const double c = dw * dt;
    pre_.resize(n_in);
    for (std::size_t j = 0; j < n_in; ++j) {
        auto jd = static_cast<double>(j);
        pre_[j] = std::polar(1.0, w0 * dt * jd + 0.5 * c * (jd * jd));
    }
    post_.resize(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        auto kd = static_cast<double>(k);
        post_[k] = std::polar(1.0, w0 * t0 + dw * t0 * kd + 0.5 * c * (kd * kd));
    }
    kernel_.assign(fft_size_, cplx(0.0, 0.0));
    for (std::size_t d = 0; d < n_out; ++d) {
        auto dd = static_cast<double>(d);
        kernel_[d] = std::polar(1.0, -0.5 * c * (dd * dd));
    }
    for (std::size_t d = 1; d < n_in; ++d) {
        auto dd = static_cast<double>(d);
        kernel_[fft_size_ - d] = std::polar(1.0, -0.5 * c * (dd * dd));
    }
    fft_inplace(kernel_, -1);
}

std::vector<cplx> ChirpTransform::apply(std::span<const cplx> x) const {
    if (x.size() != n_in_) {
        throw std::invalid_argument("ChirpTransform input size mismatch");
    }
    std::vector<cplx> work(fft_size_, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < n_in_; ++j) {
        work[j] = x[j] * pre_[j];
    }
    fft_inplace(work, -1);
    for (std::size_t i = 0; i < fft_size_; ++i) {
        work[i] *= kernel_[i];
    }
    fft_inplace(work, +1);
    const double inv = 1.0 / static_cast<double>(fft_size_);
    std::vector<cplx> out(n_out_);
    for (std::size_t k = 0; k < n_out_; ++k) {
        out[k] = work[k] * post_[k] * inv;
    }
    return out;
}

}  // namespace cvpoly::detail
