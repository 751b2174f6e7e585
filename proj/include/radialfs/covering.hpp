#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radialfs/profile.hpp"
#include "radialfs/spaces.hpp"

namespace radialfs {

struct Ball {
    std::vector<double> center;
    double radius;
    int j, k, ell;  // ell is 1-based
};

// Balls of diameter 12*2^-j covering the annuli P_{j,k}; level j is level 0 scaled by 2^-j.
class AnnularCovering {
  public:
    static AnnularCovering build(int d, int J, int Kmax, std::uint64_t seed = 0x5eed2024ULL, int mc_samples = 4000);

    int dim() const { return d_; }
    int max_level() const { return J_; }
    int max_k() const { return Kmax_; }
    int count(int k) const { return static_cast<int>(centers0_.at(k).size()); }
    // balls meeting the axis after enlarging by half the diameter (the enumeration puts them first)
    int K() const { return K_; }
    // same count for the concentric ball of half the radius
    int K_half() const { return K_half_; }
    int axis_count(int k) const { return axis_.at(k); }

    static double radius(int j);
    const std::vector<std::vector<double>>& level0_centers(int k) const { return centers0_.at(k); }
    std::vector<double> center(int j, int k, int ell) const;
    std::vector<Ball> balls(int j, int k) const;

    // k range of annuli whose balls can contain a point at distance r from 0 at level j
    std::pair<int, int> candidate_annuli(double r, int j) const;
    // number of open balls containing x
    int overlap(std::span<const double> x, int j) const;
    // max over samples of the distance to the nearest center, in units of 2^-j
    double coverage_distance(int j, int k, int samples, std::uint64_t seed) const;

    std::string to_csv(int j) const;

  private:
    int d_ = 2, J_ = 0, Kmax_ = 1, K_ = 0, K_half_ = 0;
    std::vector<std::vector<std::vector<double>>> centers0_;
    std::vector<int> axis_;
};

// psi_{j,k,l} = beta_{j,k,l} / sum beta, beta = bump(|x-c| / radius)
class PartitionOfUnity {
  public:
    PartitionOfUnity(const AnnularCovering& cov, int L);

    struct Entry {
        int k, ell;
        double value;
        std::vector<double> grad;
    };
    // all nonzero psi at x (gradients when requested)
    std::vector<Entry> evaluate(std::span<const double> x, int j, bool with_grad = false) const;
    double sum(std::span<const double> x, int j) const;
    double value(int j, int k, int ell, std::span<const double> x) const;
    // D^alpha psi by analytic gradient (|alpha| = 1) or nested central differences
    double partial(int j, int k, int ell, std::span<const double> x, std::span<const int> alpha) const;

    // sampled max over balls of |D^alpha psi| / 2^{j|alpha|}, |alpha| = order
    double sampled_derivative_bound(int j, int order, int samples, std::uint64_t seed) const;
    // frozen level-0 constant max_{|alpha| <= L}
    double C_L() const { return C_L_; }
    int L() const { return L_; }
    const AnnularCovering& covering() const { return cov_; }

  private:
    const AnnularCovering& cov_;
    int L_;
    double C_L_ = 0;
};

enum class AtomFlavor { Even1D, OneL, SpLM };

struct AtomSpec {
    int L = 1;
    int M = -1;
    double s = 1;
    double p = 2;
    AtomFlavor flavor = AtomFlavor::SpLM;

    bool B_admissible(int d) const;
    bool F_admissible(int d, double q) const;
};

// Uniform tensor grid on [lo, lo + (n-1) h]^d, row-major with the last axis fastest.
struct TensorGrid {
    int d;
    int n;
    double lo;
    double h;
    std::size_t size() const;
    double coord(int i) const { return lo + h * i; }
    void point(std::size_t flat, std::span<double> out) const;
};

struct GridFunction {
    TensorGrid grid;
    std::vector<double> values;
};

GridFunction sample_tensor(int d, int n, double lo, double hi, const std::function<double(std::span<const double>)>& f);
// D^alpha by central differences along each axis
std::vector<double> tensor_partial(const GridFunction& f, std::span<const int> alpha);
std::vector<std::vector<int>> multi_indices(int d, int order);

struct AtomReport {
    bool ok = true;
    bool support_ok = true;
    double support_excess = 0;              // max distance beyond the allowed ball
    std::vector<double> derivative_ratio;   // per order: sup |D^alpha a| / bound
    int worst_order = -1;
    bool moments_checked = false;
    double moment_max = 0;
    double moment_tol = 0;
    double bound_constant = 1;
};

// (s,p)_{L,M} or 1_L atom centered in the ball Q(center, radius); r = diam Q.
// The support must lie within distance r/2 of Q.
AtomReport validate_spL_atom(const GridFunction& a, std::span<const double> center, double radius,
                             const AtomSpec& spec, double rel_tol = 1e-6);

// radial template atom on Q; M = -1 plain bump, M in {0, 1} zero-mean difference of bumps
std::function<double(std::span<const double>)> template_spL_atom(int d, std::vector<double> center, double radius,
                                                                 const AtomSpec& spec);

// I = [-a, a] (centered) or [-b,-a] u [a,b]
struct EvenInterval {
    double a = 1;
    double b = 0;
    bool centered = true;

    static EvenInterval make_centered(double a);
    static EvenInterval make_pair(double a, double b);
    // level j, annulus k: [-2^-j, 2^-j] for k = 0, otherwise the pair [k 2^-j, (k+1) 2^-j]
    static EvenInterval for_index(int j, int k);
    // |I|: 2a for centered, b - a for the pair
    double length() const;
    // support window [lo, hi] on the half-line
    std::pair<double, double> window() const;
};

struct EvenAtomReport {
    bool ok = true;
    bool support_ok = true;
    double support_excess = 0;
    std::vector<double> derivative_ratio;
    int worst_order = -1;
    int first_violation = -1;
    double bound_constant = 1;
};

EvenAtomReport validate_even_atom(const RadialProfile& g, const EvenInterval& I, int L, double bound_constant = 1.0,
                                  double rel_tol = 1e-6);

// template even L-atom at (j, k): bump on the support window, amplitude set by the derivative bounds
double template_even_atom(double t, int j, int k, int L);
double template_even_atom_derivative(double t, int j, int k, int L, int n);
RadialProfile template_even_atom(const Grid1D& grid, int j, int k, int L);

}  // namespace radialfs
