#include "radialfs/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "radialfs/errors.hpp"

namespace radialfs {

namespace {

constexpr double kEqTol = 1e-12;

bool eq(double a, double b) { return std::abs(a - b) <= kEqTol * std::max({1.0, std::abs(a), std::abs(b)}); }
bool gt(double a, double b) { return a > b && !eq(a, b); }
bool lt(double a, double b) { return a < b && !eq(a, b); }
bool le(double a, double b) { return a < b || eq(a, b); }

Tri tri(bool b) { return b ? Tri::True : Tri::False; }

bool unwrap(Tri t, const char* what) {
    if (t == Tri::OutOfHypothesis) throw OutOfHypothesis(std::string(what) + ": parameters outside the theorem hypotheses");
    return t == Tri::True;
}

// s > thr, or s = thr with the scale-dependent borderline condition
Tri threshold_rule(const SpaceParams& a, double thr) {
    if (gt(a.s, thr)) return Tri::True;
    if (eq(a.s, thr)) return tri(a.scale == Scale::B ? le(a.q, 1.0) : le(a.p, 1.0));
    return Tri::False;
}

}  // namespace

double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }

const char* to_string(Tri t) {
    switch (t) {
        case Tri::True: return "true";
        case Tri::False: return "false";
        case Tri::OutOfHypothesis: return "out-of-hypothesis";
    }
    return "?";
}

void SpaceParams::validate() const {
    if (!(p > 0)) throw InvalidInput("p must be > 0");
    if (!(q > 0)) throw InvalidInput("q must be > 0");
    if (d < 1) throw InvalidDimension("d must be >= 1");
    if (!std::isfinite(s)) throw InvalidInput("s must be finite");
    if (scale == Scale::F && std::isinf(p)) throw InvalidInput("F scale requires p < inf");
}

std::string SpaceParams::describe() const {
    std::ostringstream os;
    os << (scale == Scale::B ? "B" : "F") << "(s=" << s << ",p=" << p << ",q=" << q << ",d=" << d << ")";
    return os.str();
}

double sigma_p(double p, int d) {
    if (!(p > 0)) throw InvalidInput("sigma_p: p must be > 0");
    return d * std::max(0.0, inv(p) - 1.0);
}

double sigma_pq(double p, double q, int d) {
    if (!(p > 0) || !(q > 0)) throw InvalidInput("sigma_pq: p, q must be > 0");
    return d * std::max({0.0, inv(p) - 1.0, inv(q) - 1.0});
}

Tri in_U_tri(const SpaceParams& a) {
    a.validate();
    return threshold_rule(a, inv(a.p));
}

Tri embeds_in_Linfty_tri(const SpaceParams& a) {
    a.validate();
    return threshold_rule(a, a.d * inv(a.p));
}

Tri trace_lands_in_Sprime_tri(const SpaceParams& a) {
    a.validate();
    if (std::isinf(a.p)) return Tri::OutOfHypothesis;
    const double hyp = a.scale == Scale::B ? sigma_p(a.p, a.d) : sigma_pq(a.p, a.q, a.d);
    if (!gt(a.s, hyp)) return Tri::OutOfHypothesis;
    return threshold_rule(a, a.d * inv(a.p) - 1.0);
}

bool in_U(const SpaceParams& a) { return unwrap(in_U_tri(a), "in_U"); }
bool embeds_in_Linfty(const SpaceParams& a) { return unwrap(embeds_in_Linfty_tri(a), "embeds_in_Linfty"); }
bool trace_lands_in_Sprime(const SpaceParams& a) {
    return unwrap(trace_lands_in_Sprime_tri(a), "trace_lands_in_Sprime");
}

bool weighted_Lp_in_Sprime(double p, int d) {
    if (!(p > 0) || std::isinf(p)) throw InvalidInput("weighted_Lp_in_Sprime: p in (0, inf)");
    return d < p;
}

bool in_U_t(double alpha, double sigma, double t) {
    if (!(t >= 1)) throw InvalidInput("in_U_t: t >= 1");
    if (std::isinf(t)) return (eq(alpha, 1.0) && (sigma >= 0 || eq(sigma, 0.0))) || lt(alpha, 1.0);
    if (eq(t, 1.0)) return (eq(alpha, 0.0) && gt(sigma, 0.0)) || lt(alpha, 0.0);
    const double b = 1.0 - 1.0 / t;
    return (eq(alpha, b) && gt(sigma, 1.0 / t)) || lt(alpha, b);
}

ParamRegion make_region(const std::string& name) {
    auto lab = [](Tri t, const char* yes, const char* no) -> std::string {
        if (t == Tri::OutOfHypothesis) return "undefined";
        return t == Tri::True ? yes : no;
    };
    if (name == "U") return {name, [lab](const SpaceParams& a) { return lab(in_U_tri(a), "U", "not-U"); }};
    if (name == "Linfty")
        return {name, [lab](const SpaceParams& a) { return lab(embeds_in_Linfty_tri(a), "Linfty", "not-Linfty"); }};
    if (name == "trace-Sprime")
        return {name, [lab](const SpaceParams& a) {
                    return lab(trace_lands_in_Sprime_tri(a), "trace-in-Sprime", "trace-not-in-Sprime");
                }};
    if (name == "fig2")
        return {name, [](const SpaceParams& a) -> std::string {
                    if (in_U_tri(a) == Tri::True) return "decay";
                    if (!std::isinf(a.p) && a.s < sigma_p(a.p, a.d)) return "singular radial distributions";
                    return "no decay";
                }};
    if (name == "fig3")
        return {name, [](const SpaceParams& a) -> std::string {
                    if (embeds_in_Linfty_tri(a) == Tri::True) return "global boundedness";
                    if (in_U_tri(a) == Tri::True) return "controlled unboundedness near the origin";
                    return "no boundedness";
                }};
    throw ConfigError("unknown region: " + name, 0, "region");
}

std::vector<std::string> region_names() { return {"U", "Linfty", "trace-Sprime", "fig2", "fig3"}; }

std::vector<RasterCell> classification_map(const ParamRegion& region, double a, double b, double c, double e,
                                           int res, int d, double q, Scale scale) {
    if (res < 1) throw InvalidInput("raster resolution must be >= 1");
    if (!(b >= a) || !(e >= c) || a < 0) throw InvalidInput("raster rectangle must satisfy 0 <= a <= b, c <= d");
    std::vector<RasterCell> out;
    out.reserve(static_cast<std::size_t>(res) * res);
    for (int i = 0; i < res; ++i) {
        const double ip = res == 1 ? a : a + (b - a) * i / (res - 1);
        for (int k = 0; k < res; ++k) {
            const double s = res == 1 ? c : c + (e - c) * k / (res - 1);
            SpaceParams sp{s, ip == 0 ? kInf : 1.0 / ip, q, d, ip == 0 ? Scale::B : scale};
            out.push_back({ip, s, region.classifier(sp)});
        }
    }
    return out;
}

std::string raster_csv(const std::vector<RasterCell>& cells) {
    std::string out = "inv_p,s,label\n";
    char buf[96];
    for (const auto& c : cells) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", c.inv_p, c.s);
        out += buf;
        out += c.label;
        out += '\n';
    }
    return out;
}

}  // namespace radialfs
