#include "radialfs/wavelets.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "radialfs/errors.hpp"

namespace radialfs {

namespace {

const std::map<int, std::vector<double>>& filters() {
    static const std::map<int, std::vector<double>> table = {
    {2, {0.482962913144534143375, 0.836516303737807905575, 0.224143868042013381026, -0.129409522551260381174}},
    {3, {0.332670552950082615999, 0.806891509311092576494, 0.459877502118491570095, -0.135011020010254588696, -0.0854412738820266616928, 0.0352262918857095366027}},
    {4, {0.230377813308896500863, 0.71484657055291564709, 0.630880767929858907882, -0.0279837694168598542114, -0.18703481171909308408, 0.0308413818355607636272, 0.0328830116668851997354, -0.0105974017850690321049}},
    {5, {0.160102397974192914481, 0.60382926979718967054, 0.724308528437772927728, 0.138428145901320731505, -0.242294887066382031863, -0.0322448695846383746485, 0.0775714938400457135231, -0.00624149021279827427419, -0.0125807519990819994685, 0.003335725285473771278}},
    {6, {0.111540743350109463621, 0.494623890398453085677, 0.751133908021095350679, 0.315250351709197629086, -0.226264693965439820076, -0.129766867567261935562, 0.0975016055873230491023, 0.0275228655303057286255, -0.0315820393174860295651, 0.000553842201161496139252, 0.00477725751094551063964, -0.00107730108530847956485}},
    {7, {0.07785205408500917902, 0.396539319481917306539, 0.729132090846235119917, 0.469782287405193122472, -0.143906003928564975405, -0.224036184993874982638, 0.0713092192668302647509, 0.0806126091510830719129, -0.0380299369350144135796, -0.0165745416306668806541, 0.012550998556099840613, 0.000429577972921366521132, -0.00180164070404749091527, 0.000353713799974520248446}},
    {8, {0.054415842243104009955, 0.312871590914299970659, 0.675630736297289806808, 0.585354683654206712771, -0.0158291052563493056674, -0.284015542961546926516, 0.000472484573913282770361, 0.128747426620478458857, -0.0173693010018075461696, -0.0440882539307947515068, 0.0139810279173982816487, 0.00874609404740577671638, -0.00487035299345157431042, -0.000391740373376947046298, 0.00067544940645056936637, -0.000117476784124769533731}},
    };
    return table;
}

}  // namespace

const Wavelet1D& Wavelet1D::daubechies(int N) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<Wavelet1D>> cache;
    if (!filters().count(N)) throw InvalidInput("Daubechies order must be in 2..8");
    std::lock_guard lock(mu);
    auto& slot = cache[N];
    if (!slot) slot.reset(new Wavelet1D(N));
    return *slot;
}

Wavelet1D::Wavelet1D(int N) : N_(N), h_(filters().at(N)) {
    const int L = 2 * N - 1;
    const double r2 = std::numbers::sqrt2;
    // phi at the integers: eigenvector of the refinement matrix, normalized to unit sum
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L + 1, L + 1);
    for (int n = 0; n <= L; ++n)
        for (int m = 0; m <= L; ++m) {
            const int k = 2 * n - m;
            if (k >= 0 && k <= L) A(n, m) = r2 * h_[k];
        }
    A -= Eigen::MatrixXd::Identity(L + 1, L + 1);
    A.row(L).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(L + 1);
    rhs(L) = 1.0;
    Eigen::VectorXd v = A.fullPivLu().solve(rhs);

    std::vector<double> cur(v.data(), v.data() + L + 1);
    for (int m = 1; m <= kCascadeLevels; ++m) {
        const int step = 1 << (m - 1);
        std::vector<double> next(static_cast<std::size_t>(L) * (1 << m) + 1, 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) {
            double s = 0;
            for (int k = 0; k <= L; ++k) {
                const long idx = static_cast<long>(i) - static_cast<long>(k) * step;
                if (idx >= 0 && idx < static_cast<long>(cur.size())) s += h_[k] * cur[idx];
            }
            next[i] = r2 * s;
        }
        cur = std::move(next);
    }
    phi_ = std::move(cur);
    // psi(x) = sqrt2 sum_k g_k phi(2x - k), g_k = (-1)^k h_{L-k}
    const int res = 1 << kCascadeLevels;
    psi_.assign(phi_.size(), 0.0);
    for (std::size_t i = 0; i < psi_.size(); ++i) {
        double s = 0;
        for (int k = 0; k <= L; ++k) {
            const long idx = 2 * static_cast<long>(i) - static_cast<long>(k) * res;
            if (idx >= 0 && idx < static_cast<long>(phi_.size())) s += ((k % 2) ? -1.0 : 1.0) * h_[L - k] * phi_[idx];
        }
        psi_[i] = r2 * s;
    }
    for (double x : phi_) phi_sup_ = std::max(phi_sup_, std::abs(x));
    for (double x : psi_) psi_sup_ = std::max(psi_sup_, std::abs(x));
}

double Wavelet1D::lookup(const std::vector<double>& tab, double x) const {
    const double u = x * (1 << kCascadeLevels);
    if (!(u > 0) || u >= static_cast<double>(tab.size() - 1)) return 0.0;
    const auto i = static_cast<std::size_t>(u);
    const double f = u - static_cast<double>(i);
    return tab[i] + f * (tab[i + 1] - tab[i]);
}

double tensor_wavelet(const Wavelet1D& w, unsigned generator, int j, const std::vector<int>& k,
                      const std::vector<double>& x) {
    const std::size_t d = x.size();
    if (k.size() != d || generator == 0 || generator >= (1u << d)) throw InvalidInput("bad tensor wavelet index");
    double v = std::pow(2.0, 0.5 * j * static_cast<double>(d));
    for (std::size_t m = 0; m < d; ++m) {
        const double u = std::ldexp(x[m], j) - k[m];
        v *= (generator >> m) & 1u ? w.psi(u) : w.phi(u);
    }
    return v;
}

namespace {

// accumulates fine and coarse (every other node) quadrature sums into a dense coefficient array
struct Accumulator {
    int d, j, L, kmin, width;
    unsigned gens;
    std::vector<double> fine, coarse;
    const Wavelet1D& w;

    Accumulator(int d_, int j_, const Wavelet1D& w_) : d(d_), j(j_), L(w_.support_length()), w(w_) {
        const int n = 1 << j;
        kmin = -n - L;
        width = 2 * n + L + 2;
        gens = (1u << d) - 1;
        double cells = gens;
        for (int m = 0; m < d; ++m) cells *= width;
        if (cells > 6.7e7) throw ResolutionError("too many wavelet coefficients at this level");
        fine.assign(static_cast<std::size_t>(cells), 0.0);
        coarse.assign(fine.size(), 0.0);
    }

    void add(const double* x, double wf, double wc) {
        // per-axis values of phi and psi for the shifts whose support contains the point
        std::array<std::array<double, 16>, 3> ph{}, ps{};
        std::array<int, 3> k0{};
        for (int m = 0; m < d; ++m) {
            const double u = std::ldexp(x[m], j);
            k0[m] = static_cast<int>(std::floor(u)) - (L - 1);
            for (int a = 0; a < L; ++a) {
                ph[m][a] = w.phi(u - (k0[m] + a));
                ps[m][a] = w.psi(u - (k0[m] + a));
            }
        }
        const std::size_t stride = fine.size() / gens;
        if (d == 2) {
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b) {
                    const std::size_t base =
                        static_cast<std::size_t>(k0[0] + a - kmin) * width + static_cast<std::size_t>(k0[1] + b - kmin);
                    const std::array<double, 3> v = {ps[0][a] * ph[1][b], ph[0][a] * ps[1][b], ps[0][a] * ps[1][b]};
                    for (unsigned g = 0; g < 3; ++g) {
                        fine[g * stride + base] += wf * v[g];
                        if (wc != 0) coarse[g * stride + base] += wc * v[g];
                    }
                }
        } else {
            for (int a = 0; a < L; ++a)
                for (int b = 0; b < L; ++b)
                    for (int c = 0; c < L; ++c) {
                        const std::size_t base =
                            (static_cast<std::size_t>(k0[0] + a - kmin) * width + (k0[1] + b - kmin)) * width +
                            (k0[2] + c - kmin);
                        for (unsigned g = 1; g <= 7; ++g) {
                            const double v = ((g & 1u) ? ps[0][a] : ph[0][a]) * ((g & 2u) ? ps[1][b] : ph[1][b]) *
                                             ((g & 4u) ? ps[2][c] : ph[2][c]);
                            fine[(g - 1) * stride + base] += wf * v;
                            if (wc != 0) coarse[(g - 1) * stride + base] += wc * v;
                        }
                    }
        }
    }
};

SphericalMeanLevel finish(Accumulator& acc, double p, double scale, std::size_t points, const SphericalMeanOptions& opt) {
    SphericalMeanLevel lv;
    lv.j = acc.j;
    lv.quadrature_points = points;
    double maxdiff = 0;
    for (std::size_t i = 0; i < acc.fine.size(); ++i) {
        acc.fine[i] *= scale;
        acc.coarse[i] *= scale;
        if (acc.fine[i] != 0.0 || acc.coarse[i] != 0.0) {
            ++lv.candidates;
            lv.coefficients.push_back(acc.fine[i]);
        }
        lv.max_abs = std::max(lv.max_abs, std::abs(acc.fine[i]));
        maxdiff = std::max(maxdiff, std::abs(acc.fine[i] - acc.coarse[i]));
    }
    lv.error_estimate = lv.max_abs > 0 ? maxdiff / 3.0 / lv.max_abs : 0.0;
    double sum = 0;
    for (double c : lv.coefficients) {
        if (std::abs(c) > opt.count_threshold * lv.max_abs) ++lv.nonvanishing;
        if (!std::isinf(p)) sum += std::pow(std::abs(c), p);
    }
    const int d = acc.d;
    const double lp = std::isinf(p) ? lv.max_abs : std::pow(sum, 1.0 / p);
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    lv.scaled_sum = std::pow(2.0, acc.j * (ip - 1.0 + d * (0.5 - ip))) * lp;
    return lv;
}

SphericalMeanLevel circle_level(int j, double p, const Wavelet1D& w, const SphericalMeanOptions& opt) {
    for (int lg = std::max({12, j + 13, opt.min_log2_points}); lg <= opt.max_log2_points; ++lg) {
        Accumulator acc(2, j, w);
        const std::size_t M = std::size_t{1} << lg;
        const double dth = 2 * std::numbers::pi / static_cast<double>(M);
        for (std::size_t i = 0; i < M; ++i) {
            const double th = dth * static_cast<double>(i);
            const double x[2] = {std::cos(th), std::sin(th)};
            acc.add(x, dth, i % 2 == 0 ? 2 * dth : 0.0);
        }
        auto lv = finish(acc, p, std::ldexp(1.0, j), M, opt);
        if (lv.error_estimate <= opt.rel_tol) return lv;
    }
    throw QuadratureError("circle quadrature did not reach the requested accuracy at level " + std::to_string(j));
}

// dsigma = dz dphi on S^2; trapezoid in both variables, coarse rule on even nodes
SphericalMeanLevel sphere_level(int j, double p, const Wavelet1D& w, const SphericalMeanOptions& opt) {
    for (int a = std::max({6, j + 6, (opt.min_log2_points - 1) / 2}); 2 * a + 1 <= opt.max_log2_points; ++a) {
        Accumulator acc(3, j, w);
        const std::size_t nz = (std::size_t{1} << a) + 1, nphi = std::size_t{1} << (a + 1);
        const double dz = 2.0 / static_cast<double>(nz - 1), dphi = 2 * std::numbers::pi / static_cast<double>(nphi);
        for (std::size_t iz = 0; iz < nz; ++iz) {
            const double z = -1.0 + dz * static_cast<double>(iz);
            const double rho = std::sqrt(std::max(0.0, 1 - z * z));
            const bool endz = iz == 0 || iz == nz - 1;
            const double wz = endz ? 0.5 * dz : dz;
            const double wzc = iz % 2 ? 0.0 : (endz ? dz : 2 * dz);
            for (std::size_t ip = 0; ip < nphi; ++ip) {
                const double ph = dphi * static_cast<double>(ip);
                const double x[3] = {rho * std::cos(ph), rho * std::sin(ph), z};
                acc.add(x, wz * dphi, ip % 2 ? 0.0 : wzc * 2 * dphi);
            }
        }
        auto lv = finish(acc, p, std::pow(2.0, 1.5 * j), nz * nphi, opt);
        if (lv.error_estimate <= opt.rel_tol) return lv;
    }
    throw QuadratureError("sphere quadrature did not reach the requested accuracy at level " + std::to_string(j));
}

}  // namespace

std::vector<SphericalMeanLevel> spherical_mean_wavelet_coeffs(int d, double p, int Jmax, const SphericalMeanOptions& opt) {
    if (d != 2 && d != 3) throw InvalidDimension("spherical mean experiment supports d = 2, 3");
    if (!(p > 0)) throw InvalidInput("p must be positive");
    if (Jmax < 0) throw InvalidInput("Jmax must be nonnegative");
    const auto& w = Wavelet1D::daubechies(opt.N);
    std::vector<SphericalMeanLevel> out;
    for (int j = 0; j <= Jmax; ++j) out.push_back(d == 2 ? circle_level(j, p, w, opt) : sphere_level(j, p, w, opt));
    return out;
}

double spherical_coefficient_bound(int d, int j, const Wavelet1D& w) {
    if (d != 2 && d != 3) throw InvalidDimension("spherical mean experiment supports d = 2, 3");
    const double sup = std::pow(std::max(w.phi_sup(), w.psi_sup()), d);
    const double cd = d == 2 ? 4.0 : 6.0;
    const double C = sup * cd * std::pow(w.support_length(), d - 1);
    return C * std::pow(2.0, j * d / 2.0) * std::pow(2.0, -j * (d - 1.0));
}

}  // namespace radialfs
