#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace radialfs {

enum class GridKind { UniformDyadic, LogSpaced, Composite };

const char* to_string(GridKind k);

// Strictly increasing nodes on the line. Even grids are closed under negation
// (node i and node n-1-i are exact negatives).
class Grid1D {
  public:
    Grid1D(std::vector<double> nodes, GridKind kind, bool even);

    // -T..T with step h, 0 included.
    static Grid1D uniform(double h, double T);
    // nodes (i+1/2)h, so no node sits on 0
    static Grid1D uniform_offset(double h, double T);
    // 0, then n log-spaced radii in [rmin, rmax], mirrored
    static Grid1D log_spaced(double rmin, double rmax, int n);
    // dyadic shells 2^-j, j=1..J, below |t|=1, uniform spacing h up to T
    static Grid1D composite(int J, double h, double T);

    // "dyadic:J=10;uniform:h=0.01,T=256", "uniform:h=..,T=..",
    // "offset:h=..,T=..", "log:rmin=..,rmax=..,n=.."
    static Grid1D parse(std::string_view descriptor);

    const std::vector<double>& nodes() const { return nodes_; }
    std::size_t size() const { return nodes_.size(); }
    double operator[](std::size_t i) const { return nodes_[i]; }
    double front() const { return nodes_.front(); }
    double back() const { return nodes_.back(); }
    GridKind kind() const { return kind_; }
    bool even() const { return even_; }
    std::size_t mirror(std::size_t i) const { return nodes_.size() - 1 - i; }

    bool is_uniform(double rtol = 1e-9) const;
    double spacing() const;  // throws unless uniform
    double max_spacing() const;

    // composite trapezoid weights
    std::vector<double> trapezoid_weights() const;

    // first index with node >= 0 (even grids)
    std::size_t first_nonnegative() const;

    const std::string& descriptor() const { return descriptor_; }

  private:
    std::vector<double> nodes_;
    GridKind kind_;
    bool even_;
    std::string descriptor_;
};

}  // namespace radialfs
