#include "radialfs/bv_radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "quadrature.hpp"
#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/radial_ops.hpp"

namespace radialfs {

namespace {

double wpow(double t, int d) { return d == 1 ? 1.0 : std::pow(t, d - 1); }

std::vector<double> merged(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// integral of f over [0, end] split at breaks, each piece by composite Gauss
double piecewise_integral(const std::function<double(double)>& f, std::vector<double> breaks, double end,
                          int panels = 128) {
    breaks.push_back(0.0);
    breaks.push_back(end);
    breaks = merged(std::move(breaks));
    double total = 0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i] >= end) break;
        total += detail::integrate(f, breaks[i], std::min(breaks[i + 1], end), panels);
    }
    return total;
}

double bump_value(const BumpComponent& b, double t) { return b.amplitude * bump((t - b.center) / b.width); }
double bump_slope(const BumpComponent& b, double t) {
    return b.amplitude / b.width * bump_derivative((t - b.center) / b.width, 1);
}

}  // namespace

double RadonMeasure1D::weighted_tail_variation(int d, double r, bool include_r) const {
    double total = 0;
    for (const auto& [loc, mass] : atoms)
        if (loc > r || (include_r && loc == r)) total += wpow(loc, d) * std::abs(mass);
    if (density && density_support > r) {
        std::vector<double> br;
        for (double b : density_breaks)
            if (b > r) br.push_back(b - r);
        total += piecewise_integral([&](double u) { return wpow(u + r, d) * std::abs(density(u + r)); }, br,
                                    density_support - r);
    }
    return total;
}

BVProfile::BVProfile(int d, std::vector<Step> steps, std::vector<BumpComponent> bumps) : d_(d), bumps_(std::move(bumps)) {
    if (d < 1) throw InvalidDimension("d >= 1");
    std::sort(steps.begin(), steps.end(), [](const Step& a, const Step& b) { return a.radius < b.radius; });
    for (const auto& s : steps) {
        if (!(s.radius > 0) || !std::isfinite(s.radius) || !std::isfinite(s.amplitude))
            throw InvalidInput("step radii must be positive and finite");
        if (!steps_.empty() && steps_.back().radius == s.radius)
            steps_.back().amplitude += s.amplitude;
        else
            steps_.push_back(s);
    }
    std::erase_if(steps_, [](const Step& s) { return s.amplitude == 0.0; });
    for (const auto& b : bumps_)
        if (!(b.width > 0) || !(b.center >= 0) || !std::isfinite(b.amplitude))
            throw InvalidInput("bump needs width > 0 and center >= 0");
}

BVProfile BVProfile::parse(std::string_view text, int d) {
    std::vector<Step> steps;
    std::vector<BumpComponent> bumps;
    std::string s(text);
    std::stringstream ss(s);
    std::string section;
    while (std::getline(ss, section, ';')) {
        const auto colon = section.find(':');
        if (colon == std::string::npos) throw ConfigError("profile section without ':' in \"" + s + "\"", 0, "profile");
        const std::string name = section.substr(0, colon);
        std::string body = section.substr(colon + 1);
        std::size_t pos = 0;
        while ((pos = body.find('(', pos)) != std::string::npos) {
            const auto close = body.find(')', pos);
            if (close == std::string::npos) throw ConfigError("unbalanced parenthesis in \"" + s + "\"", 0, "profile");
            std::vector<double> nums;
            std::stringstream item(body.substr(pos + 1, close - pos - 1));
            std::string tok;
            while (std::getline(item, tok, ',')) {
                try {
                    nums.push_back(std::stod(tok));
                } catch (const std::exception&) {
                    throw ConfigError("bad number \"" + tok + "\" in profile", 0, "profile");
                }
            }
            if (name == "steps" && nums.size() == 2)
                steps.push_back({nums[0], nums[1]});
            else if (name == "bumps" && nums.size() == 3)
                bumps.push_back({nums[0], nums[1], nums[2]});
            else
                throw ConfigError("bad entry in section \"" + name + "\"", 0, "profile");
            pos = close + 1;
        }
    }
    return BVProfile(d, std::move(steps), std::move(bumps));
}

std::string BVProfile::descriptor() const {
    std::string out;
    char buf[96];
    if (!steps_.empty()) {
        out += "steps:";
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g)", i ? "," : "", steps_[i].radius, steps_[i].amplitude);
            out += buf;
        }
    }
    if (!bumps_.empty()) {
        out += out.empty() ? "bumps:" : ";bumps:";
        for (std::size_t i = 0; i < bumps_.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g,%.17g)", i ? "," : "", bumps_[i].center, bumps_[i].width,
                          bumps_[i].amplitude);
            out += buf;
        }
    }
    return out;
}

BVProfile BVProfile::random_staircase(std::uint64_t seed, int n, int d, bool monotone, double rmin, double rmax) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> R(rmin, rmax), A(monotone ? 0.1 : -1.0, 1.0);
    std::vector<Step> steps;
    for (int i = 0; i < n; ++i) steps.push_back({R(rng), A(rng)});
    return BVProfile(d, std::move(steps));
}

double BVProfile::value(double t) const {
    t = std::abs(t);
    double v = 0;
    for (const auto& s : steps_)
        if (t < s.radius) v += s.amplitude;
    for (const auto& b : bumps_) v += bump_value(b, t);
    return v;
}

double BVProfile::left_limit(double t) const {
    t = std::abs(t);
    double v = 0;
    for (const auto& s : steps_)
        if (t <= s.radius) v += s.amplitude;
    for (const auto& b : bumps_) v += bump_value(b, t);
    return v;
}

double BVProfile::smooth_derivative(double t) const {
    double v = 0;
    for (const auto& b : bumps_) v += bump_slope(b, t);
    return v;
}

RadonMeasure1D BVProfile::derivative_measure() const {
    RadonMeasure1D nu;
    for (const auto& s : steps_) nu.atoms.emplace_back(s.radius, -s.amplitude);
    if (!bumps_.empty()) {
        nu.density = [bumps = bumps_](double t) {
            double v = 0;
            for (const auto& b : bumps) v += bump_slope(b, t);
            return v;
        };
        for (const auto& b : bumps_) {
            nu.density_breaks.push_back(std::max(0.0, b.center - b.width));
            nu.density_breaks.push_back(b.center);
            nu.density_breaks.push_back(b.center + b.width);
            nu.density_support = std::max(nu.density_support, b.center + b.width);
        }
        nu.density_breaks = merged(nu.density_breaks);
    }
    return nu;
}

BVProfile BVProfile::dilated(double lambda) const {
    if (!(lambda > 0)) throw InvalidInput("dilation factor must be positive");
    std::vector<Step> st = steps_;
    for (auto& s : st) s.radius *= lambda;
    std::vector<BumpComponent> bs = bumps_;
    for (auto& b : bs) {
        b.center *= lambda;
        b.width *= lambda;
    }
    return BVProfile(d_, std::move(st), std::move(bs));
}

BVProfile BVProfile::scaled(double c) const {
    std::vector<Step> st = steps_;
    for (auto& s : st) s.amplitude *= c;
    std::vector<BumpComponent> bs = bumps_;
    for (auto& b : bs) b.amplitude *= c;
    return BVProfile(d_, std::move(st), std::move(bs));
}

RadialProfile BVProfile::sample(const Grid1D& grid) const {
    return RadialProfile::sample(grid, [this](double t) { return value(t); }, d_);
}

std::vector<double> BVProfile::breakpoints() const {
    std::vector<double> out;
    for (const auto& s : steps_) out.push_back(s.radius);
    for (const auto& b : bumps_) {
        out.push_back(std::max(0.0, b.center - b.width));
        out.push_back(b.center);
        out.push_back(b.center + b.width);
    }
    return merged(std::move(out));
}

double BVProfile::support_end() const {
    double e = 0;
    for (const auto& s : steps_) e = std::max(e, s.radius);
    for (const auto& b : bumps_) e = std::max(e, b.center + b.width);
    return e;
}

double bv_l1_part(const BVProfile& g) {
    const int d = g.dim();
    if (g.bumps().empty()) {
        // exact: the staircase is constant between consecutive radii
        double total = 0, lo = 0;
        for (const auto& s : g.steps()) {
            const double v = std::abs(g.value(0.5 * (lo + s.radius)));
            total += v * (std::pow(s.radius, d) - std::pow(lo, d)) / d;
            lo = s.radius;
        }
        return total;
    }
    return piecewise_integral([&](double t) { return std::abs(g.value(t)) * wpow(t, d); }, g.breakpoints(),
                              g.support_end());
}

double bv_variation_part(const BVProfile& g) { return g.derivative_measure().weighted_total_variation(g.dim()); }

double bv_weighted_norm(const BVProfile& g) { return bv_l1_part(g) + bv_variation_part(g); }

double coordinate_sum_constant(int d) { return d * 2.0 * ball_volume(d - 1); }

BVEquivalenceReport bv_equivalence_check(const BVProfile& g, BVConvention conv, bool cross_check) {
    const int d = g.dim();
    if (d != 2 && d != 3) throw InvalidDimension("BV equivalence check supports d = 2, 3");
    BVEquivalenceReport rep;
    const double l1 = bv_l1_part(g), var = bv_variation_part(g);
    const double omega = sphere_area(d);
    rep.l1_rd = omega * l1;
    rep.variation_rd = (conv == BVConvention::Isotropic ? omega : coordinate_sum_constant(d)) * var;
    rep.norm_rd = rep.l1_rd + rep.variation_rd;
    rep.norm_1d = l1 + var;
    rep.ratio = rep.norm_1d == 0 && rep.norm_rd == 0 ? 1.0 : rep.norm_rd / rep.norm_1d;
    if (cross_check && g.steps().empty() && !g.bumps().empty()) {
        double wmin = INFINITY;
        for (const auto& b : g.bumps()) wmin = std::min(wmin, b.width);
        const double T = g.support_end() * 1.05 + wmin;
        const auto grid = Grid1D::uniform(wmin / 256.0, T);
        const auto rep1 = radial_gradient_identity_check(g.sample(grid), 1.0, d);
        const double reduced = omega * g.derivative_measure().weighted_total_variation(d);
        rep.gradient_cross_check = reduced > 0 ? rep1.field_side / reduced : 1.0;
    }
    return rep;
}

BVDecayReport bv_decay_check(const BVProfile& g, const std::vector<double>& radii) {
    const int d = g.dim();
    const auto nu = g.derivative_measure();
    const double norm = bv_weighted_norm(g);
    const bool exact = g.bumps().empty();
    BVDecayReport rep;
    auto add = [&](double r, bool left) {
        BVDecayRow row;
        row.radius = r;
        row.left = left;
        row.lhs = wpow(r, d) * std::abs(left ? g.left_limit(r) : g.value(r));
        row.tail = nu.weighted_tail_variation(d, r, left);
        row.norm_ratio = norm > 0 ? row.lhs / norm : 0.0;
        const double slack = exact ? 1.0 : 1.0 + 1e-9;
        if (row.lhs > row.tail * slack) rep.tail_bound_holds = false;
        if (row.lhs > norm * slack) rep.norm_bound_holds = false;
        if (row.tail > 0) rep.max_tail_ratio = std::max(rep.max_tail_ratio, row.lhs / row.tail);
        rep.rows.push_back(row);
    };
    for (const auto& s : g.steps()) {
        add(s.radius, true);
        add(s.radius, false);
    }
    for (double r : radii) add(r, false);
    const double end = g.support_end();
    for (double r : {end * 1.0001 + 1e-12, 2 * end + 1, 10 * end + 1})
        if (g.value(r) != 0.0) rep.eventually_zero = false;
    return rep;
}

PairingReport bv_pairing_check(const BVProfile& g) {
    const int d = g.dim();
    const auto nu = g.derivative_measure();
    PairingReport rep;
    const double end = std::max(g.support_end(), 1e-3);
    auto breaks = g.breakpoints();
    for (int m = 0; m < 12; ++m) {
        const double c = end * (0.1 + 0.9 * m / 11.0), w = end * (0.15 + 0.05 * (m % 4));
        auto phi = [=](double t) { return t * bump((t - c) / w); };
        auto dphi = [=](double t) { return bump((t - c) / w) + t / w * bump_derivative((t - c) / w, 1); };
        auto dweighted = [&](double t) {
            return dphi(t) * wpow(t, d) + (d > 1 ? (d - 1) * phi(t) * wpow(t, d - 1) : 0.0);
        };
        auto br = breaks;
        br.push_back(std::max(0.0, c - w));
        br.push_back(c);
        const double hi = c + w;
        const double lhs = piecewise_integral([&](double t) { return g.value(t) * dweighted(t); }, br, hi);
        double rhs = 0;
        for (const auto& [loc, mass] : nu.atoms) rhs -= phi(loc) * wpow(loc, d) * mass;
        if (nu.density) {
            auto br2 = br;
            for (double b : nu.density_breaks) br2.push_back(b);
            rhs -= piecewise_integral([&](double t) { return phi(t) * wpow(t, d) * nu.density(t); }, br2,
                                      std::min(hi, nu.density_support));
        }
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
    }
    // pairings that nearly cancel are measured against the largest one
    double big = 0;
    for (std::size_t i = 0; i < rep.lhs.size(); ++i) big = std::max({big, std::abs(rep.lhs[i]), std::abs(rep.rhs[i])});
    for (std::size_t i = 0; i < rep.lhs.size(); ++i) {
        const double scale = std::max({std::abs(rep.lhs[i]), std::abs(rep.rhs[i]), 1e-6 * big});
        if (scale > 0) rep.max_relative_defect = std::max(rep.max_relative_defect, std::abs(rep.lhs[i] - rep.rhs[i]) / scale);
    }
    return rep;
}

}  // namespace radialfs
