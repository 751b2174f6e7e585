#include "radialfs/seqspace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"

namespace radialfs {

void CoefficientGrid::set(int j, int k, double v) {
    if (j < 0 || k < 0) throw InvalidInput("coefficient indices must be >= 0");
    if (!std::isfinite(v)) throw InvalidInput("coefficient must be finite");
    if (static_cast<int>(levels_.size()) <= j) levels_.resize(j + 1);
    auto& lv = levels_[j];
    if (static_cast<int>(lv.size()) <= k) lv.resize(k + 1, 0.0);
    lv[k] = v;
}

void CoefficientGrid::add(int j, int k, double v) { set(j, k, get(j, k) + v); }

double CoefficientGrid::get(int j, int k) const {
    if (j < 0 || k < 0 || j >= static_cast<int>(levels_.size())) return 0.0;
    const auto& lv = levels_[j];
    return k < static_cast<int>(lv.size()) ? lv[k] : 0.0;
}

int CoefficientGrid::level_size(int j) const {
    return j < static_cast<int>(levels_.size()) ? static_cast<int>(levels_[j].size()) : 0;
}

bool CoefficientGrid::empty() const { return nonzeros() == 0; }

std::size_t CoefficientGrid::nonzeros() const {
    std::size_t n = 0;
    for (const auto& lv : levels_)
        for (double v : lv) n += v != 0.0;
    return n;
}

CoefficientGrid CoefficientGrid::truncated(int J0) const {
    CoefficientGrid out(*this);
    if (J0 + 1 < static_cast<int>(out.levels_.size())) out.levels_.resize(std::max(0, J0 + 1));
    return out;
}

CoefficientGrid CoefficientGrid::scaled(double c) const {
    CoefficientGrid out(*this);
    for (auto& lv : out.levels_)
        for (auto& v : lv) v *= c;
    return out;
}

std::string CoefficientGrid::to_csv() const {
    std::string out = "j,k,value\n";
    char buf[80];
    for (std::size_t j = 0; j < levels_.size(); ++j)
        for (std::size_t k = 0; k < levels_[j].size(); ++k)
            if (levels_[j][k] != 0.0) {
                std::snprintf(buf, sizeof buf, "%zu,%zu,%.17g\n", j, k, levels_[j][k]);
                out += buf;
            }
    return out;
}

CoefficientGrid CoefficientGrid::from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    CoefficientGrid g;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line.rfind("j,k", 0) == 0) continue;
        int j = 0, k = 0;
        double v = 0;
        if (std::sscanf(line.c_str(), "%d,%d,%lf", &j, &k, &v) != 3)
            throw InvalidInput("coefficient CSV line " + std::to_string(lineno) + " malformed");
        g.set(j, k, v);
    }
    return g;
}

double chi_sharp(int j, int k, double t) {
    const double h = std::ldexp(1.0, -j), r = std::abs(t);
    return (k * h <= r && r <= (k + 1) * h) ? 1.0 : 0.0;
}

double chi_tilde(int j, int k, std::span<const double> x) {
    double s = 0;
    for (double c : x) s += c * c;
    const double h = std::ldexp(1.0, -j), r = std::sqrt(s);
    return (k * h <= r && r < (k + 1) * h) ? 1.0 : 0.0;
}

namespace {

// log of sum exp(v_i), summed in the given order after a max shift
double log_sum_exp(const std::vector<double>& v) {
    double m = -INFINITY;
    for (double x : v) m = std::max(m, x);
    if (m == -INFINITY) return -INFINITY;
    double s = 0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

void check_pq(double p, double q) {
    if (!(p > 0) || !(q > 0)) throw InvalidInput("sequence norms need p, q > 0");
}

// b-type norm with level weight 2^{j w}, in log space
double b_norm(const CoefficientGrid& c, double p, double q, int d, double w) {
    check_pq(p, q);
    std::vector<double> level_logs;
    for (int j = 0; j <= c.max_level(); ++j) {
        const auto& lv = c.level(j);
        std::vector<double> terms;
        double sup = -INFINITY;
        for (std::size_t k = 0; k < lv.size(); ++k) {
            if (lv[k] == 0.0) continue;
            const double la = std::log(std::abs(lv[k]));
            if (std::isinf(p))
                sup = std::max(sup, la);
            else
                terms.push_back((d - 1) * std::log1p(static_cast<double>(k)) + p * la);
        }
        double inner = std::isinf(p) ? sup : log_sum_exp(terms) / p;
        if (inner == -INFINITY) continue;
        level_logs.push_back(inner + j * w * std::numbers::ln2);
    }
    if (level_logs.empty()) return 0.0;
    if (std::isinf(q)) return std::exp(*std::max_element(level_logs.begin(), level_logs.end()));
    for (auto& x : level_logs) x *= q;
    return std::exp(log_sum_exp(level_logs) / q);
}

// f-type norm: inner function (sum_j 2^{j w q} sum_k |s_{jk}|^q chi_{jk})^{1/q} is constant on the
// cells [m, m+1) 2^-J of the finest level J; cell_measure(m) returns the weighted measure of the cell.
template <class Measure>
double f_norm_exact(const CoefficientGrid& c, double p, double q, double w, Measure cell_measure, int& Jout) {
    check_pq(p, q);
    if (std::isinf(p)) throw InvalidInput("f-type norms need p < inf");
    int J = -1;
    long long cells = 0;
    for (int j = 0; j <= c.max_level(); ++j) {
        const auto& lv = c.level(j);
        int last = -1;
        for (std::size_t k = 0; k < lv.size(); ++k)
            if (lv[k] != 0.0) last = static_cast<int>(k);
        if (last < 0) continue;
        J = j;
    }
    Jout = J;
    if (J < 0) return 0.0;
    for (int j = 0; j <= J; ++j) {
        const auto& lv = c.level(j);
        int last = -1;
        for (std::size_t k = 0; k < lv.size(); ++k)
            if (lv[k] != 0.0) last = static_cast<int>(k);
        if (last >= 0) cells = std::max(cells, static_cast<long long>(last + 1) << (J - j));
    }
    if (cells > (1LL << 28)) throw ResolutionError("f-norm exact path: too many cells");
    std::vector<double> logs;
    logs.reserve(static_cast<std::size_t>(cells));
    std::vector<double> level_terms;
    for (long long m = 0; m < cells; ++m) {
        level_terms.clear();
        double sup = -INFINITY;
        for (int j = 0; j <= J; ++j) {
            const long long k = m >> (J - j);
            const double v = c.get(j, static_cast<int>(k));
            if (v == 0.0) continue;
            const double la = std::log(std::abs(v)) + j * w * std::numbers::ln2;
            if (std::isinf(q))
                sup = std::max(sup, la);
            else
                level_terms.push_back(q * la);
        }
        const double inner = std::isinf(q) ? sup : log_sum_exp(level_terms) / q;
        if (inner == -INFINITY) continue;
        logs.push_back(p * inner + std::log(cell_measure(m, J)));
    }
    return std::exp(log_sum_exp(logs) / p);
}

}  // namespace

double seq_norm_bspqd(const CoefficientGrid& c, const SpaceParams& a) {
    a.validate();
    return b_norm(c, a.p, a.q, a.d, a.s - a.d * inv(a.p));
}

double seq_norm_bpqd(const CoefficientGrid& c, double p, double q, int d) { return b_norm(c, p, q, d, 0.0); }

double seq_norm_fspqd(const CoefficientGrid& c, const SpaceParams& a) {
    a.validate();
    const int d = a.d;
    int J = 0;
    // int over both half-lines of |t|^{d-1} on the cell: 2 2^{-Jd} ((m+1)^d - m^d) / d
    auto measure = [d](long long m, int J) {
        const double mm = static_cast<double>(m);
        return 2.0 * std::ldexp(1.0, -J * d) * (std::pow(mm + 1, d) - std::pow(mm, d)) / d;
    };
    return f_norm_exact(c, a.p, a.q, a.s, measure, J);
}

double seq_norm_fpqd(const CoefficientGrid& c, double p, double q, int d) {
    if (d < 1) throw InvalidDimension("d >= 1");
    int J = 0;
    const double omega = sphere_area(d);
    // volume of the shell m 2^-J <= |x| < (m+1) 2^-J in R^d
    auto measure = [d, omega](long long m, int J) {
        const double mm = static_cast<double>(m);
        return omega / d * std::ldexp(1.0, -J * d) * (std::pow(mm + 1, d) - std::pow(mm, d));
    };
    return f_norm_exact(c, p, q, d * inv(p), measure, J);
}

namespace {

double f_norm_on_grid(const CoefficientGrid& c, double p, double q, int d, double w, const Grid1D& grid,
                      double outer_const) {
    check_pq(p, q);
    if (std::isinf(p)) throw InvalidInput("f-type norms need p < inf");
    if (!grid.even()) throw EvennessViolation("f-norm grid must be even");
    const int J = c.max_level();
    if (J >= 0 && grid.max_spacing() > std::ldexp(1.0, -J - 1) * (1 + 1e-12))
        throw ResolutionError("f-norm grid spacing exceeds 2^{-J-1}");
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = std::abs(grid[i]);
        double acc = 0, sup = 0;
        for (int j = 0; j <= J; ++j) {
            const double h = std::ldexp(1.0, -j);
            // closed intervals: a node on a breakpoint sees both neighbours
            const long long k1 = static_cast<long long>(std::floor(r / h));
            for (long long k = std::max(0LL, k1 - 1); k <= k1; ++k) {
                if (!(k * h <= r && r <= (k + 1) * h)) continue;
                const double val = c.get(j, static_cast<int>(k));
                if (val == 0.0) continue;
                const double term = std::pow(2.0, j * w) * std::abs(val);
                if (std::isinf(q))
                    sup = std::max(sup, term);
                else
                    acc += std::pow(term, q);
            }
        }
        v[i] = std::isinf(q) ? sup : std::pow(acc, 1.0 / q);
    }
    return outer_const * weighted_lp_norm(grid, v, p, d);
}

}  // namespace

double seq_norm_fspqd(const CoefficientGrid& c, const SpaceParams& a, const Grid1D& grid) {
    a.validate();
    return f_norm_on_grid(c, a.p, a.q, a.d, a.s, grid, 1.0);
}

double seq_norm_fpqd(const CoefficientGrid& c, double p, double q, int d, const Grid1D& grid) {
    return f_norm_on_grid(c, p, q, d, d * inv(p), grid, std::pow(0.5 * sphere_area(d), 1.0 / p));
}

}  // namespace radialfs
