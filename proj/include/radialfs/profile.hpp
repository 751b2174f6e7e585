#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radialfs/grid.hpp"

namespace radialfs {

// Sampled even function on an even grid: g(t) = g(-t) bitwise at paired nodes.
class RadialProfile {
  public:
    RadialProfile(Grid1D grid, std::vector<double> values, std::optional<int> dim = std::nullopt);

    // Evaluates fn on |t| for t >= 0 and mirrors, so evenness is exact.
    static RadialProfile sample(const Grid1D& grid, const std::function<double(double)>& fn,
                                std::optional<int> dim = std::nullopt);

    const Grid1D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::optional<int> dim() const { return dim_; }
    std::size_t size() const { return values_.size(); }
    double t(std::size_t i) const { return grid_[i]; }
    double value(std::size_t i) const { return values_[i]; }

    // Linear interpolation in |t|; zero outside the grid.
    double operator()(double t) const;
    // Cubic Hermite with finite-difference slopes.
    double cubic(double t) const;
    // exact node lookup if t is a node, else nullopt
    std::optional<double> at_node(double t) const;

    RadialProfile scaled(double c) const;
    RadialProfile with_values(std::vector<double> v) const;
    RadialProfile with_dim(int d) const;

    std::string to_csv() const;
    static RadialProfile from_csv(const std::string& text, std::optional<int> dim = std::nullopt);
    void save_csv(const std::string& path) const;
    static RadialProfile load_csv(const std::string& path, std::optional<int> dim = std::nullopt);

  private:
    Grid1D grid_;
    std::vector<double> values_;
    std::optional<int> dim_;
};

enum class Interp { Linear, Cubic };

// f(x) = g(|x|)
class RadialField {
  public:
    RadialField(RadialProfile g, int d, Interp interp = Interp::Linear);
    double operator()(std::span<const double> x) const;
    double at_radius(double r) const;
    int dim() const { return d_; }
    const RadialProfile& profile() const { return g_; }

  private:
    RadialProfile g_;
    int d_;
    Interp interp_;
};

}  // namespace radialfs
