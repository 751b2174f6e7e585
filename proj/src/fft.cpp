#include "fft.hpp"

#include <cstring>
#include <mutex>

namespace radialfs::detail {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

RealFFT::RealFFT(std::size_t n) : n_(n) {
    std::lock_guard<std::mutex> lk(planner_mutex());
    rbuf_ = fftw_alloc_real(n);
    cbuf_ = fftw_alloc_complex(n / 2 + 1);
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), rbuf_, cbuf_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), cbuf_, rbuf_, FFTW_ESTIMATE);
}

RealFFT::~RealFFT() {
    std::lock_guard<std::mutex> lk(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(rbuf_);
    fftw_free(cbuf_);
}

void RealFFT::forward(const std::vector<double>& in, std::vector<std::complex<double>>& out) {
    std::memcpy(rbuf_, in.data(), n_ * sizeof(double));
    fftw_execute(fwd_);
    out.resize(n_ / 2 + 1);
    std::memcpy(static_cast<void*>(out.data()), cbuf_, (n_ / 2 + 1) * sizeof(fftw_complex));
}

void RealFFT::inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out) {
    // c2r destroys its input, so work on the internal buffer
    std::memcpy(cbuf_, static_cast<const void*>(in.data()), (n_ / 2 + 1) * sizeof(fftw_complex));
    fftw_execute(inv_);
    out.resize(n_);
    std::memcpy(out.data(), rbuf_, n_ * sizeof(double));
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace radialfs::detail
