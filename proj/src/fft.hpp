#pragma once

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <vector>

namespace radialfs::detail {

// Real <-> half-complex transforms of one fixed length.
class RealFFT {
  public:
    explicit RealFFT(std::size_t n);
    ~RealFFT();
    RealFFT(const RealFFT&) = delete;
    RealFFT& operator=(const RealFFT&) = delete;

    std::size_t size() const { return n_; }
    std::size_t spectrum_size() const { return n_ / 2 + 1; }

    void forward(const std::vector<double>& in, std::vector<std::complex<double>>& out);
    // unnormalized inverse; divide by size() for the true inverse
    void inverse(const std::vector<std::complex<double>>& in, std::vector<double>& out);

  private:
    std::size_t n_;
    double* rbuf_;
    fftw_complex* cbuf_;
    fftw_plan fwd_;
    fftw_plan inv_;
};

std::size_t next_pow2(std::size_t n);

}  // namespace radialfs::detail
