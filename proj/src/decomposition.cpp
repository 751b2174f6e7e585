#include "radialfs/decomposition.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>

#include "fft.hpp"
#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/radial_ops.hpp"

namespace radialfs {

namespace {

double beta(int j, int k, double t) {
    const double h = std::ldexp(1.0, -j), r = std::abs(t);
    if (k == 0) return bump(r / (1.5 * h));
    return bump((r - (k + 0.5) * h) / h);
}

// support of Theta_{j,k} on the half-line
std::pair<double, double> partition_window(int j, int k) {
    const double h = std::ldexp(1.0, -j);
    if (k == 0) return {0.0, 1.5 * h};
    return {(k - 0.5) * h, (k + 1.5) * h};
}

int resolve_dim(const RadialProfile& g, int d) {
    if (d > 0) return d;
    if (g.dim()) return *g.dim();
    throw InvalidDimension("decomposition needs a weight dimension");
}

double residual_norm(const Grid1D& grid, const std::vector<double>& r, double p, int d) {
    return weighted_lp_norm(grid, r, std::max(1.0, p), d);
}

// ---------------------------------------------------------------- template pursuit

struct SparseAtom {
    int j, k;
    std::size_t first;          // first node index of the positive-side window
    std::vector<double> vals;   // values on [first, first + vals.size())
    std::size_t mfirst;         // mirrored window (same as first for k = 0)
};

SparseAtom make_template(const Grid1D& grid, int j, int k, int L) {
    const auto [lo, hi] = partition_window(j, k);
    const auto& x = grid.nodes();
    SparseAtom a{j, k, 0, {}, 0};
    const double from = k == 0 ? -hi : lo;
    auto it = std::upper_bound(x.begin(), x.end(), from);
    a.first = static_cast<std::size_t>(it - x.begin());
    for (std::size_t i = a.first; i < x.size() && x[i] < hi; ++i) a.vals.push_back(template_even_atom(x[i], j, k, L));
    a.mfirst = k == 0 ? a.first : grid.size() - a.first - a.vals.size();
    return a;
}

void axpy_atom(const SparseAtom& a, double c, std::vector<double>& v) {
    for (std::size_t i = 0; i < a.vals.size(); ++i) v[a.first + i] += c * a.vals[i];
    if (a.k != 0)
        for (std::size_t i = 0; i < a.vals.size(); ++i) v[a.mfirst + a.vals.size() - 1 - i] += c * a.vals[i];
}

double dot_atom(const SparseAtom& a, const std::vector<double>& v) {
    double s = 0;
    for (std::size_t i = 0; i < a.vals.size(); ++i) s += v[a.first + i] * a.vals[i];
    if (a.k != 0)
        for (std::size_t i = 0; i < a.vals.size(); ++i) s += v[a.mfirst + a.vals.size() - 1 - i] * a.vals[i];
    return s;
}

double dot_atoms(const SparseAtom& a, const SparseAtom& b, std::size_t n) {
    std::vector<double> va(n, 0.0);
    axpy_atom(a, 1.0, va);
    return dot_atom(b, va);
}

bool try_pursuit(const RadialProfile& g, const AtomSpec& spec, int J, int d, const DecompositionOptions& opt,
                 AtomicDecomposition& out) {
    const auto& grid = g.grid();
    const std::size_t n = grid.size();
    const double T = grid.back();
    std::vector<SparseAtom> dict;
    for (int j = 0; j <= J; ++j) {
        const double h = std::ldexp(1.0, -j);
        for (int k = 0;; ++k) {
            if (partition_window(j, k).second > T - 2 * grid.max_spacing()) break;
            auto a = make_template(grid, j, k, spec.L);
            // a template must be resolved by at least a handful of nodes
            if (a.vals.size() < 8) break;
            dict.push_back(std::move(a));
            (void)h;
        }
    }
    if (dict.empty()) return false;
    std::vector<double> norms2(dict.size());
    for (std::size_t i = 0; i < dict.size(); ++i) norms2[i] = dot_atom(dict[i], [&] {
                                                      std::vector<double> v(n, 0.0);
                                                      axpy_atom(dict[i], 1.0, v);
                                                      return v;
                                                  }());
    std::vector<double> r = g.values();
    double g2 = 0;
    for (double v : r) g2 += v * v;
    const double gnorm = residual_norm(grid, g.values(), spec.p, d);
    std::vector<std::size_t> chosen;
    Eigen::VectorXd coef;
    for (int it = 0; it < opt.max_template_atoms; ++it) {
        std::size_t best = dict.size();
        double best_score = 0;
        for (std::size_t i = 0; i < dict.size(); ++i) {
            if (norms2[i] <= 0) continue;
            const double c = dot_atom(dict[i], r);
            const double score = c * c / norms2[i];
            if (score > best_score) {
                best_score = score;
                best = i;
            }
        }
        if (best == dict.size()) return false;
        if (std::find(chosen.begin(), chosen.end(), best) != chosen.end()) return false;
        chosen.push_back(best);
        const std::size_t m = chosen.size();
        Eigen::MatrixXd A(m, m);
        Eigen::VectorXd b(m);
        for (std::size_t a = 0; a < m; ++a) {
            b(a) = dot_atom(dict[chosen[a]], g.values());
            for (std::size_t c = 0; c < m; ++c) A(a, c) = dot_atoms(dict[chosen[a]], dict[chosen[c]], n);
        }
        coef = A.ldlt().solve(b);
        r = g.values();
        for (std::size_t a = 0; a < m; ++a) axpy_atom(dict[chosen[a]], -coef(a), r);
        double r2 = 0;
        for (double v : r) r2 += v * v;
        if (it == 0 && r2 > 0.25 * g2) return false;
        const double rel = residual_norm(grid, r, spec.p, d) / gnorm;
        if (rel <= 1e-10) {
            out.method = "template-pursuit";
            for (std::size_t a = 0; a < m; ++a) {
                const auto& at = dict[chosen[a]];
                out.coefficients.add(at.j, at.k, coef(a));
                out.atoms.push_back({at.j, at.k, coef(a), "template"});
                out.levels = std::max(out.levels, at.j);
            }
            out.residual_norm = residual_norm(grid, r, spec.p, d);
            out.relative_residual = rel;
            return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------- mollifier bands

// Phi_j * g on the grid, Phi_j = 2^j Phi(2^j .), discretely normalized
class Mollifier {
  public:
    explicit Mollifier(const RadialProfile& g) : grid_(g.grid()) {
        h_ = grid_.spacing();
        N_ = grid_.size();
        const std::size_t margin = static_cast<std::size_t>(std::ceil(1.0 / h_)) + 4;
        M_ = detail::next_pow2(N_ + 2 * margin);
        fft_ = std::make_unique<detail::RealFFT>(M_);
        std::vector<double> padded(M_, 0.0);
        std::copy(g.values().begin(), g.values().end(), padded.begin());
        fft_->forward(padded, G_);
    }

    std::vector<double> smooth(int j) {
        std::vector<double> ker(M_, 0.0);
        const double w = std::ldexp(1.0, -j);
        double sum = 0;
        for (std::size_t i = 0; i < M_ / 2; ++i) {
            const double v = bump(static_cast<double>(i) * h_ / w);
            if (v == 0.0 && i > 0) break;
            ker[i] = v;
            if (i > 0) ker[M_ - i] = v;
            sum += i > 0 ? 2 * v : v;
        }
        for (auto& v : ker) v /= sum;
        std::vector<std::complex<double>> K;
        fft_->forward(ker, K);
        for (std::size_t m = 0; m < K.size(); ++m) K[m] *= G_[m] / static_cast<double>(M_);
        std::vector<double> out;
        fft_->inverse(K, out);
        out.resize(N_);
        // the convolution of even data with an even kernel is even; remove rounding asymmetry
        for (std::size_t i = 0; i < N_ / 2; ++i) {
            const double a = 0.5 * (out[i] + out[N_ - 1 - i]);
            out[i] = out[N_ - 1 - i] = a;
        }
        return out;
    }

  private:
    const Grid1D& grid_;
    double h_;
    std::size_t N_, M_;
    std::unique_ptr<detail::RealFFT> fft_;
    std::vector<std::complex<double>> G_;
};

// splits one band over the level-j partition; returns (k, scale) pairs
void split_band(const Grid1D& grid, const std::vector<double>& band, int j, int L, AtomicDecomposition& out) {
    const auto& x = grid.nodes();
    const std::size_t n = x.size();
    const double T = x.back();
    const double len0 = 2 * std::ldexp(1.0, -j), len1 = std::ldexp(1.0, -j);
    const std::size_t i0 = grid.first_nonnegative();
    for (int k = 0;; ++k) {
        const auto [lo, hi] = partition_window(j, k);
        if (lo >= T) break;
        const double from = k == 0 ? -hi : lo;
        std::size_t a = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), from) - x.begin());
        std::size_t b = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), hi) - x.begin());
        if (b <= a) continue;
        const std::size_t margin = static_cast<std::size_t>(L) + 3;
        const std::size_t s0 = a >= margin ? a - margin : 0;
        const std::size_t s1 = std::min(n, b + margin);
        if (s1 - s0 < 3) continue;
        std::vector<double> nodes(x.begin() + s0, x.begin() + s1), vals(s1 - s0, 0.0);
        bool any = false;
        for (std::size_t i = a; i < b; ++i) {
            const double t = x[i];
            const double th = level_partition(j, k, t);
            vals[i - s0] = band[i] * th;
            any = any || vals[i - s0] != 0.0;
        }
        if (!any) continue;
        const Grid1D local(std::move(nodes), GridKind::UniformDyadic, false);
        const double len = k == 0 ? len0 : len1;
        double scale = 0;
        for (int m = 0; m <= L; ++m) {
            const auto D = nth_derivative(local, vals, m);
            double sup = 0;
            for (double v : D) sup = std::max(sup, std::abs(v));
            scale = std::max(scale, std::pow(len, m) * sup);
        }
        if (scale == 0) continue;
        out.coefficients.add(j, k, scale);
        out.atoms.push_back({j, k, scale, "band"});
        (void)i0;
    }
}

}  // namespace

double level_partition(int j, int k, double t) {
    const double b = beta(j, k, t);
    if (b == 0.0) return 0.0;
    const double h = std::ldexp(1.0, -j), u = std::abs(t) / h;
    double sum = beta(j, 0, t);
    const int k0 = std::max(1, static_cast<int>(std::floor(u - 1.5)));
    const int k1 = static_cast<int>(std::ceil(u + 0.5));
    for (int m = k0; m <= k1; ++m) sum += beta(j, m, t);
    return b / sum;
}

int max_resolvable_level(const Grid1D& grid) {
    const double h = grid.spacing();
    return std::max(0, static_cast<int>(std::floor(std::log2(1.0 / (8 * h)))));
}

std::string AtomicDecomposition::to_csv() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "# template=even-bump method=%s L=%d M=%d s=%.17g p=%.17g residual=%.6g\n",
                  method.c_str(), spec.L, spec.M, spec.s, spec.p, relative_residual);
    std::string out = buf;
    out += "j,k,coefficient\n";
    for (int j = 0; j <= coefficients.max_level(); ++j)
        for (int k = 0; k < coefficients.level_size(j); ++k) {
            const double v = coefficients.get(j, k);
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%d,%d,%.17g\n", j, k, v);
            out += buf;
        }
    return out;
}

AtomicDecomposition decompose_profile(const RadialProfile& g, const AtomSpec& spec, const DecompositionOptions& opt) {
    const int d = resolve_dim(g, opt.d);
    const auto& grid = g.grid();
    if (!grid.is_uniform()) throw ResolutionError("decomposition needs a uniform grid");
    const int Jmax = max_resolvable_level(grid);
    int J = opt.J < 0 ? Jmax : opt.J;
    if (J > Jmax) throw ResolutionError("grid cannot resolve the requested number of levels");
    if (spec.L < 0) throw InvalidInput("atom regularity L >= 0");

    AtomicDecomposition out;
    out.spec = spec;
    out.tolerance = opt.tolerance;
    out.j0_normalization_constant = std::ldexp(1.0, spec.L);
    bool zero = true;
    for (double v : g.values()) zero = zero && v == 0.0;
    if (zero) {
        out.method = "zero";
        out.level_residuals.assign(J + 1, 0.0);
        return out;
    }
    // band supports spread by the level-0 kernel width
    {
        const double T = grid.back();
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g.value(i) != 0.0 && std::abs(g.t(i)) > T - 1.0)
                throw InvalidInput("profile support must stay 1 away from the grid ends");
    }
    if (opt.try_templates && try_pursuit(g, spec, J, d, opt, out)) return out;

    out.method = "mollifier-bands";
    Mollifier mol(g);
    const double gnorm = residual_norm(grid, g.values(), spec.p, d);
    std::vector<double> prev(g.size(), 0.0), recon(g.size(), 0.0);
    for (int j = 0; j <= J; ++j) {
        auto cur = mol.smooth(j);
        std::vector<double> band(g.size());
        for (std::size_t i = 0; i < band.size(); ++i) band[i] = cur[i] - prev[i];
        split_band(grid, band, j, spec.L, out);
        for (std::size_t i = 0; i < band.size(); ++i) recon[i] += band[i];
        std::vector<double> r(g.size());
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.value(i) - cur[i];
        out.level_residuals.push_back(residual_norm(grid, r, spec.p, d) / gnorm);
        prev = std::move(cur);
    }
    if (J >= 2 && out.level_residuals[J] > out.level_residuals[J - 2])
        throw DecompositionFailure("residual does not decay: level " + std::to_string(J) + " residual " +
                                   std::to_string(out.level_residuals[J]) + " exceeds level " +
                                   std::to_string(J - 2) + " residual " + std::to_string(out.level_residuals[J - 2]));
    // what the finest level leaves behind becomes one more band
    std::vector<double> rem(g.size());
    for (std::size_t i = 0; i < rem.size(); ++i) rem[i] = g.value(i) - prev[i];
    split_band(grid, rem, J + 1, spec.L, out);
    for (std::size_t i = 0; i < rem.size(); ++i) recon[i] += rem[i];
    out.levels = J + 1;
    std::vector<double> r(g.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = g.value(i) - recon[i];
    out.residual_norm = residual_norm(grid, r, spec.p, d);
    out.relative_residual = out.residual_norm / gnorm;
    if (!out.meets_tolerance())
        throw DecompositionFailure("reconstruction residual " + std::to_string(out.relative_residual) +
                                   " above tolerance");
    return out;
}

RadialProfile band_atom(const RadialProfile& g, const AtomicDecomposition& dec, int j, int k) {
    const double c = dec.coefficients.get(j, k);
    const auto& grid = g.grid();
    std::vector<double> v(grid.size(), 0.0);
    if (c == 0.0) return RadialProfile(grid, std::move(v), g.dim());
    if (dec.method == "template-pursuit") return template_even_atom(grid, j, k, dec.spec.L);
    Mollifier mol(g);
    std::vector<double> band;
    if (j == dec.levels && dec.levels > 0) {
        const auto cur = mol.smooth(j - 1);
        band.resize(grid.size());
        for (std::size_t i = 0; i < band.size(); ++i) band[i] = g.value(i) - cur[i];
    } else {
        const auto cur = mol.smooth(j);
        band = cur;
        if (j > 0) {
            const auto prev = mol.smooth(j - 1);
            for (std::size_t i = 0; i < band.size(); ++i) band[i] -= prev[i];
        }
    }
    for (std::size_t i = grid.first_nonnegative(); i < grid.size(); ++i) {
        v[i] = band[i] * level_partition(j, k, grid[i]) / c;
        v[grid.mirror(i)] = v[i];
    }
    return RadialProfile(grid, std::move(v), g.dim());
}

std::pair<double, double> tb_tf_norms(const AtomicDecomposition& dec, const SpaceParams& params) {
    return {seq_norm_bspqd(dec.coefficients, params), seq_norm_fspqd(dec.coefficients, params)};
}

double tb_norm(const RadialProfile& g, const SpaceParams& params, const AtomSpec& spec, const DecompositionOptions& opt) {
    params.validate();
    if (!spec.B_admissible(params.d)) throw InvalidInput("atom spec not admissible for the B scale");
    DecompositionOptions o = opt;
    o.d = params.d;
    return seq_norm_bspqd(decompose_profile(g, spec, o).coefficients, params);
}

double tf_norm(const RadialProfile& g, const SpaceParams& params, const AtomSpec& spec, const DecompositionOptions& opt) {
    params.validate();
    if (!spec.F_admissible(params.d, params.q)) throw InvalidInput("atom spec not admissible for the F scale");
    DecompositionOptions o = opt;
    o.d = params.d;
    return seq_norm_fspqd(decompose_profile(g, spec, o).coefficients, params);
}

namespace {
void check_sobolev_p(double p) {
    if (!(p >= 1)) throw InvalidInput("Sobolev norms need p >= 1");
}
}  // namespace

double sobolev_radial_norm_1(const RadialProfile& g, double p, int d) {
    check_sobolev_p(p);
    const auto g1 = derivative(g.grid(), g.values());
    return weighted_lp_norm(g.grid(), g.values(), p, d) + weighted_lp_norm(g.grid(), g1, p, d);
}

double sobolev_radial_norm_2(const RadialProfile& g, double p, int d) {
    check_sobolev_p(p);
    const auto& grid = g.grid();
    const auto g1 = derivative(grid, g.values());
    const auto g2 = second_derivative(grid, g.values());
    std::vector<double> over_r(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) over_r[i] = grid[i] == 0.0 ? g2[i] : g1[i] / grid[i];
    return weighted_lp_norm(grid, g.values(), p, d) + weighted_lp_norm(grid, g1, p, d) +
           weighted_lp_norm(grid, over_r, p, d) + weighted_lp_norm(grid, g2, p, d);
}

double sobolev_radial_norm_2m(const RadialProfile& g, double p, int d, int m) {
    if (!(p > 1) || std::isinf(p)) throw InvalidInput("sobolev_radial_norm_2m needs 1 < p < inf");
    if (m < 1) throw InvalidInput("sobolev_radial_norm_2m needs m >= 1");
    if (g.size() < static_cast<std::size_t>(2 * m + 1)) throw ResolutionError("grid cannot resolve 2m differences");
    RadialProfile cur = g.with_dim(d);
    for (int i = 0; i < m; ++i) cur = radial_laplacian(cur, d);
    return weighted_lp_norm(g.grid(), g.values(), p, d) + weighted_lp_norm(cur, p, d);
}

}  // namespace radialfs
