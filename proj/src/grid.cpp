#include "radialfs/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "radialfs/errors.hpp"

namespace radialfs {

const char* to_string(GridKind k) {
    switch (k) {
        case GridKind::UniformDyadic: return "uniform-dyadic";
        case GridKind::LogSpaced: return "log-spaced";
        case GridKind::Composite: return "composite";
    }
    return "?";
}

namespace {

std::vector<double> mirror_half(const std::vector<double>& pos, bool with_zero) {
    std::vector<double> out;
    out.reserve(2 * pos.size() + 1);
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) out.push_back(-*it);
    if (with_zero) out.push_back(0.0);
    out.insert(out.end(), pos.begin(), pos.end());
    return out;
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

Grid1D::Grid1D(std::vector<double> nodes, GridKind kind, bool even)
    : nodes_(std::move(nodes)), kind_(kind), even_(even) {
    if (nodes_.size() < 2) throw InvalidInput("grid needs at least 2 nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!std::isfinite(nodes_[i])) throw InvalidInput("grid node not finite");
        if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
            throw InvalidInput("grid nodes must be strictly increasing");
    }
    if (even_) {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            if (nodes_[i] != -nodes_[mirror(i)])
                throw EvennessViolation("even grid is not closed under negation");
    }
}

Grid1D Grid1D::uniform(double h, double T) {
    if (!(h > 0) || !(T > 0) || h > T) throw InvalidInput("uniform grid: need 0 < h <= T");
    const long n = std::lround(std::floor(T / h + 1e-9));
    std::vector<double> pos;
    pos.reserve(n);
    for (long i = 1; i <= n; ++i) pos.push_back(static_cast<double>(i) * h);
    Grid1D g(mirror_half(pos, true), GridKind::UniformDyadic, true);
    g.descriptor_ = "uniform:h=" + fmt(h) + ",T=" + fmt(T);
    return g;
}

Grid1D Grid1D::uniform_offset(double h, double T) {
    if (!(h > 0) || !(T > 0) || h > T) throw InvalidInput("offset grid: need 0 < h <= T");
    std::vector<double> pos;
    for (long i = 0;; ++i) {
        double t = (static_cast<double>(i) + 0.5) * h;
        if (t > T * (1 + 1e-12)) break;
        pos.push_back(t);
    }
    Grid1D g(mirror_half(pos, false), GridKind::UniformDyadic, true);
    g.descriptor_ = "offset:h=" + fmt(h) + ",T=" + fmt(T);
    return g;
}

Grid1D Grid1D::log_spaced(double rmin, double rmax, int n) {
    if (!(rmin > 0) || !(rmax > rmin) || n < 2) throw InvalidInput("log grid: need 0 < rmin < rmax, n >= 2");
    std::vector<double> pos(n);
    const double lr = std::log(rmax / rmin);
    for (int i = 0; i < n; ++i) pos[i] = rmin * std::exp(lr * i / (n - 1));
    pos.back() = rmax;
    Grid1D g(mirror_half(pos, true), GridKind::LogSpaced, true);
    g.descriptor_ = "log:rmin=" + fmt(rmin) + ",rmax=" + fmt(rmax) + ",n=" + std::to_string(n);
    return g;
}

Grid1D Grid1D::composite(int J, double h, double T) {
    if (J < 1 || !(h > 0) || h > 0.5 || !(T >= 1)) throw InvalidInput("composite grid: need J >= 1, 0 < h <= 1/2, T >= 1");
    const int M = std::max(1, static_cast<int>(std::ceil(0.5 / h - 1e-9)));
    std::vector<double> pos;
    for (int j = J; j >= 1; --j) {
        const double a = std::ldexp(1.0, -j);
        for (int i = 0; i < M; ++i) pos.push_back(a * (1.0 + static_cast<double>(i) / M));
    }
    const long n = std::lround(std::floor((T - 1) / h + 1e-9));
    for (long i = 0; i <= n; ++i) pos.push_back(1.0 + static_cast<double>(i) * h);
    Grid1D g(mirror_half(pos, true), GridKind::Composite, true);
    g.descriptor_ = "dyadic:J=" + std::to_string(J) + ";uniform:h=" + fmt(h) + ",T=" + fmt(T);
    return g;
}

Grid1D Grid1D::parse(std::string_view descriptor) {
    std::map<std::string, std::map<std::string, std::string>> sections;
    std::string text(descriptor);
    std::stringstream ss(text);
    std::string seg;
    while (std::getline(ss, seg, ';')) {
        if (seg.empty()) continue;
        auto colon = seg.find(':');
        if (colon == std::string::npos) throw ConfigError("grid descriptor segment without ':' : " + seg);
        std::string name = seg.substr(0, colon);
        std::stringstream kv(seg.substr(colon + 1));
        std::string item;
        while (std::getline(kv, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("grid descriptor item without '=' : " + item);
            sections[name][item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto num = [&](const std::string& sec, const std::string& key) {
        auto s = sections.find(sec);
        if (s == sections.end() || !s->second.count(key))
            throw ConfigError("grid descriptor missing " + sec + ":" + key);
        try {
            return std::stod(s->second.at(key));
        } catch (const std::exception&) {
            throw ConfigError("grid descriptor value not numeric: " + sec + ":" + key);
        }
    };
    try {
        if (sections.count("dyadic")) {
            return composite(static_cast<int>(num("dyadic", "J")), num("uniform", "h"), num("uniform", "T"));
        }
        if (sections.count("uniform")) return uniform(num("uniform", "h"), num("uniform", "T"));
        if (sections.count("offset")) return uniform_offset(num("offset", "h"), num("offset", "T"));
        if (sections.count("log"))
            return log_spaced(num("log", "rmin"), num("log", "rmax"), static_cast<int>(num("log", "n")));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("grid descriptor rejected: ") + e.what());
    }
    throw ConfigError("unrecognized grid descriptor: " + text);
}

bool Grid1D::is_uniform(double rtol) const {
    const double h = nodes_[1] - nodes_[0];
    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (std::abs((nodes_[i] - nodes_[i - 1]) - h) > rtol * h) return false;
    return true;
}

double Grid1D::spacing() const {
    if (!is_uniform()) throw ResolutionError("grid is not uniform");
    return (nodes_.back() - nodes_.front()) / static_cast<double>(nodes_.size() - 1);
}

double Grid1D::max_spacing() const {
    double m = 0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) m = std::max(m, nodes_[i] - nodes_[i - 1]);
    return m;
}

std::vector<double> Grid1D::trapezoid_weights() const {
    std::vector<double> w(nodes_.size(), 0.0);
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const double half = 0.5 * (nodes_[i] - nodes_[i - 1]);
        w[i - 1] += half;
        w[i] += half;
    }
    return w;
}

std::size_t Grid1D::first_nonnegative() const {
    return static_cast<std::size_t>(std::lower_bound(nodes_.begin(), nodes_.end(), 0.0) - nodes_.begin());
}

}  // namespace radialfs
