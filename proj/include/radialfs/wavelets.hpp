#pragma once

#include <cstddef>
#include <vector>

namespace radialfs {

// Daubechies orthonormal wavelet with N vanishing moments, tabulated by the cascade algorithm
class Wavelet1D {
  public:
    static constexpr int kCascadeLevels = 10;

    // N in 2..8; instances are cached and immutable
    static const Wavelet1D& daubechies(int N);

    int vanishing_moments() const { return N_; }
    int support_length() const { return 2 * N_ - 1; }  // supp phi = supp psi = [0, 2N-1]
    const std::vector<double>& filter() const { return h_; }
    double phi(double x) const { return lookup(phi_, x); }
    double psi(double x) const { return lookup(psi_, x); }
    double phi_sup() const { return phi_sup_; }
    double psi_sup() const { return psi_sup_; }
    // dyadic samples at step 2^-kCascadeLevels
    const std::vector<double>& phi_table() const { return phi_; }
    const std::vector<double>& psi_table() const { return psi_; }

  private:
    explicit Wavelet1D(int N);
    double lookup(const std::vector<double>& tab, double x) const;

    int N_;
    std::vector<double> h_, phi_, psi_;
    double phi_sup_ = 0, psi_sup_ = 0;
};

// tensor wavelet 2^{jd/2} prod_m f_{e_m}(2^j x_m - k_m), e != 0, f_0 = phi, f_1 = psi
double tensor_wavelet(const Wavelet1D& w, unsigned generator, int j, const std::vector<int>& k,
                      const std::vector<double>& x);

struct SphericalMeanLevel {
    int j = 0;
    std::size_t candidates = 0;      // wavelets whose support cube meets the sphere
    std::size_t nonvanishing = 0;    // |c| above count_threshold * max|c|
    double scaled_sum = 0;
    double max_abs = 0;
    double error_estimate = 0;       // relative Richardson estimate
    std::size_t quadrature_points = 0;
    std::vector<double> coefficients;  // nonzero ones, sorted by (generator, k)
};

struct SphericalMeanOptions {
    int N = 6;
    double rel_tol = 1e-6;
    int min_log2_points = 0;
    int max_log2_points = 24;
    double count_threshold = 1e-10;
};

// <sigma, Psi_{i,j,k}> for the surface measure on the unit sphere, d in {2,3}; scaled l_p sums per level
std::vector<SphericalMeanLevel> spherical_mean_wavelet_coeffs(int d, double p, int Jmax,
                                                              const SphericalMeanOptions& opt = {});

// support-size bound C 2^{jd/2} 2^{-j(d-1)} on one coefficient
double spherical_coefficient_bound(int d, int j, const Wavelet1D& w);

}  // namespace radialfs
