#include "radialfs/profile.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "radialfs/errors.hpp"

namespace radialfs {

RadialProfile::RadialProfile(Grid1D grid, std::vector<double> values, std::optional<int> dim)
    : grid_(std::move(grid)), values_(std::move(values)), dim_(dim) {
    if (!grid_.even()) throw EvennessViolation("profile grid must be even");
    if (values_.size() != grid_.size()) throw InvalidInput("profile values do not match grid size");
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) throw InvalidInput("profile value not finite");
        if (values_[i] != values_[grid_.mirror(i)])
            throw EvennessViolation("profile not even at t=" + std::to_string(grid_[i]));
    }
    if (dim_ && *dim_ < 1) throw InvalidDimension("dimension must be >= 1");
}

RadialProfile RadialProfile::sample(const Grid1D& grid, const std::function<double(double)>& fn,
                                    std::optional<int> dim) {
    if (!grid.even()) throw EvennessViolation("profile grid must be even");
    std::vector<double> v(grid.size());
    for (std::size_t i = grid.first_nonnegative(); i < grid.size(); ++i) {
        v[i] = fn(grid[i]);
        v[grid.mirror(i)] = v[i];
    }
    return RadialProfile(grid, std::move(v), dim);
}

double RadialProfile::operator()(double t) const {
    const double r = std::abs(t);
    const auto& x = grid_.nodes();
    if (r > x.back()) return 0.0;
    auto it = std::lower_bound(x.begin() + grid_.first_nonnegative(), x.end(), r);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (*it == r) return values_[i];
    // r lies in (x[i-1], x[i]); x[i-1] may be negative when 0 is not a node
    const double x0 = x[i - 1], x1 = x[i];
    const double w = (r - x0) / (x1 - x0);
    return (1 - w) * values_[i - 1] + w * values_[i];
}

double RadialProfile::cubic(double t) const {
    const double r = std::abs(t);
    const auto& x = grid_.nodes();
    const std::size_t n = x.size();
    if (r > x.back()) return 0.0;
    auto it = std::lower_bound(x.begin(), x.end(), r);
    std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (*it == r) return values_[i];
    auto slope = [&](std::size_t k) {
        if (k == 0) return (values_[1] - values_[0]) / (x[1] - x[0]);
        if (k == n - 1) return (values_[n - 1] - values_[n - 2]) / (x[n - 1] - x[n - 2]);
        return (values_[k + 1] - values_[k - 1]) / (x[k + 1] - x[k - 1]);
    };
    const double x0 = x[i - 1], x1 = x[i], h = x1 - x0, u = (r - x0) / h;
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u), h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u), h11 = u * u * (u - 1);
    return h00 * values_[i - 1] + h10 * h * slope(i - 1) + h01 * values_[i] + h11 * h * slope(i);
}

std::optional<double> RadialProfile::at_node(double t) const {
    const auto& x = grid_.nodes();
    auto it = std::lower_bound(x.begin(), x.end(), t);
    if (it == x.end() || *it != t) return std::nullopt;
    return values_[static_cast<std::size_t>(it - x.begin())];
}

RadialProfile RadialProfile::scaled(double c) const {
    std::vector<double> v(values_);
    for (auto& x : v) x *= c;
    return RadialProfile(grid_, std::move(v), dim_);
}

RadialProfile RadialProfile::with_values(std::vector<double> v) const {
    return RadialProfile(grid_, std::move(v), dim_);
}

RadialProfile RadialProfile::with_dim(int d) const { return RadialProfile(grid_, values_, d); }

std::string RadialProfile::to_csv() const {
    std::string out = "t,value\n";
    char buf[64];
    for (std::size_t i = 0; i < values_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid_[i], values_[i]);
        out += buf;
    }
    return out;
}

RadialProfile RadialProfile::from_csv(const std::string& text, std::optional<int> dim) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("t,value", 0) != 0)
        throw InvalidInput("profile CSV must start with header t,value");
    std::vector<double> t, v;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto c = line.find(',');
        if (c == std::string::npos) throw InvalidInput("profile CSV line " + std::to_string(lineno) + " malformed");
        try {
            t.push_back(std::stod(line.substr(0, c)));
            v.push_back(std::stod(line.substr(c + 1)));
        } catch (const std::exception&) {
            throw InvalidInput("profile CSV line " + std::to_string(lineno) + " not numeric");
        }
    }
    return RadialProfile(Grid1D(std::move(t), GridKind::Composite, true), std::move(v), dim);
}

void RadialProfile::save_csv(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw InvalidInput("cannot write " + path);
    f << to_csv();
}

RadialProfile RadialProfile::load_csv(const std::string& path, std::optional<int> dim) {
    std::ifstream f(path);
    if (!f) throw InvalidInput("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_csv(ss.str(), dim);
}

RadialField::RadialField(RadialProfile g, int d, Interp interp) : g_(std::move(g)), d_(d), interp_(interp) {
    if (d < 2) throw InvalidDimension("radial field needs d >= 2");
}

double RadialField::at_radius(double r) const { return interp_ == Interp::Linear ? g_(r) : g_.cubic(r); }

double RadialField::operator()(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != d_) throw InvalidDimension("point dimension mismatch");
    double s = 0;
    for (double c : x) s += c * c;
    return at_radius(std::sqrt(s));
}

}  // namespace radialfs
