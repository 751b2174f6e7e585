#pragma once

#include <span>
#include <string>
#include <vector>

#include "radialfs/grid.hpp"
#include "radialfs/spaces.hpp"

namespace radialfs {

// s_{j,k}, ragged per level; missing entries read as zero
class CoefficientGrid {
  public:
    CoefficientGrid() = default;
    void set(int j, int k, double v);
    void add(int j, int k, double v);
    double get(int j, int k) const;
    int max_level() const { return static_cast<int>(levels_.size()) - 1; }
    int level_size(int j) const;  // K(j) + 1
    const std::vector<double>& level(int j) const { return levels_.at(j); }
    bool empty() const;
    std::size_t nonzeros() const;
    // copy with levels above J0 removed
    CoefficientGrid truncated(int J0) const;
    CoefficientGrid scaled(double c) const;

    // rows "j,k,value", zeros omitted
    std::string to_csv() const;
    static CoefficientGrid from_csv(const std::string& text);

  private:
    std::vector<std::vector<double>> levels_;
};

// chi^#_{j,k}(t) = 1 iff k 2^-j <= |t| <= (k+1) 2^-j
double chi_sharp(int j, int k, double t);
// characteristic function of P_{j,k} = {k 2^-j <= |x| < (k+1) 2^-j}
double chi_tilde(int j, int k, std::span<const double> x);

double seq_norm_bspqd(const CoefficientGrid& c, const SpaceParams& a);
double seq_norm_bpqd(const CoefficientGrid& c, double p, double q, int d);

// exact evaluation: the inner function is constant on the cells of the finest level
double seq_norm_fspqd(const CoefficientGrid& c, const SpaceParams& a);
double seq_norm_fpqd(const CoefficientGrid& c, double p, double q, int d);

// pointwise evaluation on the nodes of an even grid followed by the trapezoid norm;
// needs spacing <= 2^{-J-1}
double seq_norm_fspqd(const CoefficientGrid& c, const SpaceParams& a, const Grid1D& grid);
double seq_norm_fpqd(const CoefficientGrid& c, double p, double q, int d, const Grid1D& grid);

}  // namespace radialfs
