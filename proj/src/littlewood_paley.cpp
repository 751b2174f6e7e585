#include "radialfs/littlewood_paley.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "fft.hpp"
#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"

namespace radialfs {

namespace {

double phi0(double w) { return smooth_step((1.5 - std::abs(w)) / 0.5); }

struct Padded {
    std::vector<double> data;
    std::vector<double> t;
    double h;
};

Padded pad(const RadialProfile& g) {
    const auto& grid = g.grid();
    if (!grid.is_uniform()) throw ResolutionError("Littlewood-Paley norm needs a uniform grid");
    const double h = grid.spacing();
    const std::size_t N = grid.size();
    const std::size_t M = detail::next_pow2(N + N / 4 + 16);
    Padded P{std::vector<double>(M, 0.0), std::vector<double>(M), h};
    for (std::size_t i = 0; i < N; ++i) P.data[i] = g.value(i);
    const std::size_t right = N + (M - N) / 2;
    for (std::size_t i = 0; i < M; ++i)
        P.t[i] = i < right ? grid.front() + static_cast<double>(i) * h
                           : grid.front() - static_cast<double>(M - i) * h;
    return P;
}

int nyquist_level(double h) {
    const double wn = std::numbers::pi / h;
    return std::max(1, static_cast<int>(std::ceil(std::log2(wn))));
}

template <class Fn>
void for_each_band(const RadialProfile& g, const LPOptions& opt, Fn&& fn, int& top_out, double& share_out,
                   std::vector<double>& t_out) {
    Padded P = pad(g);
    const std::size_t M = P.data.size();
    detail::RealFFT fft(M);
    std::vector<std::complex<double>> G, B;
    fft.forward(P.data, G);
    int top = nyquist_level(P.h);
    if (opt.max_level >= 0) {
        if (opt.max_level > top) throw ResolutionError("requested band levels exceed the grid's Nyquist level");
        top = std::max(1, opt.max_level);
    }
    std::vector<double> omega(G.size());
    for (std::size_t m = 0; m < G.size(); ++m) omega[m] = 2 * std::numbers::pi * m / (M * P.h);
    double total = 0, top_e = 0;
    for (std::size_t m = 0; m < G.size(); ++m) {
        const double e = std::norm(G[m]);
        total += e;
        top_e += e * std::pow(lp_window(top, top, omega[m]), 2);
    }
    top_out = top;
    share_out = total > 0 ? std::sqrt(top_e / total) : 0.0;
    if (share_out > opt.resolution_tol)
        throw ResolutionError("grid too coarse: top Littlewood-Paley band carries " + std::to_string(share_out) +
                              " of the L2 mass");
    t_out = P.t;
    std::vector<double> band;
    B.resize(G.size());
    for (int j = 0; j <= top; ++j) {
        for (std::size_t m = 0; m < G.size(); ++m) B[m] = G[m] * (lp_window(j, top, omega[m]) / static_cast<double>(M));
        fft.inverse(B, band);
        fn(j, band, P.h);
    }
}

}  // namespace

double lp_window(int j, int top, double omega) {
    if (j < 0 || j > top) return 0.0;
    if (j == 0) return phi0(omega);
    const double hi = j == top ? 1.0 : phi0(std::ldexp(omega, -j));
    return hi - phi0(std::ldexp(omega, 1 - j));
}

DyadicBandSpectrum dyadic_bands(const RadialProfile& g, const LPOptions& opt) {
    DyadicBandSpectrum S;
    for_each_band(
        g, opt, [&](int, const std::vector<double>& b, double) { S.bands.push_back(b); }, S.top_level, S.top_share,
        S.t);
    return S;
}

LPBandNorms lp_band_norms(const RadialProfile& g, double p, int weight_d, const LPOptions& opt) {
    if (!(p > 0)) throw InvalidInput("p must be > 0");
    if (weight_d < 1) throw InvalidDimension("weight dimension >= 1");
    LPBandNorms out;
    std::vector<double> t;
    std::vector<double> w;
    for_each_band(
        g, opt,
        [&](int, const std::vector<double>& b, double h) {
            if (w.empty()) {
                w.resize(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) w[i] = std::pow(std::abs(t[i]), weight_d - 1);
            }
            if (std::isinf(p)) {
                double m = 0;
                for (double x : b) m = std::max(m, std::abs(x));
                out.norms.push_back(m);
                return;
            }
            double s = 0;
            for (std::size_t i = 0; i < b.size(); ++i) s += std::pow(std::abs(b[i]), p) * w[i];
            out.norms.push_back(std::pow(s * h, 1.0 / p));
        },
        out.top_level, out.top_share, t);
    return out;
}

double combine_band_norms(const LPBandNorms& b, double s, double q) {
    if (!(q > 0)) throw InvalidInput("q must be > 0");
    double acc = 0;
    for (std::size_t j = 0; j < b.norms.size(); ++j) {
        const double v = std::pow(2.0, s * static_cast<double>(j)) * b.norms[j];
        acc = std::isinf(q) ? std::max(acc, v) : acc + std::pow(v, q);
    }
    return std::isinf(q) ? acc : std::pow(acc, 1.0 / q);
}

double lp_besov_norm_1d(const RadialProfile& g, const SpaceParams& params, bool weighted, const LPOptions& opt) {
    params.validate();
    bool zero = true;
    for (double v : g.values()) zero = zero && v == 0.0;
    if (zero) return 0.0;
    return combine_band_norms(lp_band_norms(g, params.p, weighted ? params.d : 1, opt), params.s, params.q);
}

}  // namespace radialfs
