#include "radialfs/decay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "radialfs/bumps.hpp"
#include "radialfs/decomposition.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/littlewood_paley.hpp"

namespace radialfs {

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw UndefinedFit("least squares needs two or more points");
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0) throw UndefinedFit("abscissae are all equal");
    LinearFit f;
    f.n = x.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.slope * x[i] + f.intercept);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

DecayFit fit_decay_exponent(const RadialProfile& f, const std::vector<double>& R_list) {
    if (R_list.size() < 4) throw UndefinedFit("decay fit needs at least 4 radii");
    for (std::size_t i = 0; i < R_list.size(); ++i)
        if (!(R_list[i] > 0) || (i && !(R_list[i] > R_list[i - 1]))) throw UndefinedFit("radii must be positive and increasing");
    if (f.grid().back() < 2 * R_list.back()) throw UndefinedFit("profile grid does not reach 2 * max R");
    DecayFit fit;
    fit.radii = R_list;
    std::vector<double> lx, ly;
    for (double R : R_list) {
        double amp = 0;
        bool seen = false;
        for (std::size_t i = f.grid().first_nonnegative(); i < f.size(); ++i) {
            const double t = f.t(i);
            if (t < R || t > 2 * R) continue;
            seen = true;
            amp = std::max(amp, std::abs(f.value(i)));
        }
        if (!seen) throw UndefinedFit("no grid node in [R, 2R] for R = " + std::to_string(R));
        if (amp == 0) throw UndefinedFit("zero amplitude on [R, 2R] for R = " + std::to_string(R));
        fit.amplitudes.push_back(amp);
        lx.push_back(std::log(R));
        ly.push_back(std::log(amp));
    }
    const auto lf = least_squares(lx, ly);
    fit.exponent = lf.slope;
    fit.residual = lf.rms;
    return fit;
}

Surrogate parse_surrogate(const std::string& name) {
    if (name == "lp" || name == "littlewood-paley") return Surrogate::LittlewoodPaley;
    if (name == "atomic") return Surrogate::Atomic;
    throw ConfigError("unknown surrogate \"" + name + "\" (expected lp or atomic)", 0, "surrogate");
}

double surrogate_norm(const RadialProfile& g, const SpaceParams& params, Surrogate kind) {
    if (kind == Surrogate::LittlewoodPaley) return lp_besov_norm_1d(g, params, true);
    AtomSpec spec;
    spec.L = std::max(1, static_cast<int>(std::floor(params.s)) + 1);
    spec.M = -1;
    spec.s = params.s;
    spec.p = params.p;
    spec.flavor = AtomFlavor::Even1D;
    DecompositionOptions opt;
    opt.d = params.d;
    return params.scale == Scale::B ? tb_norm(g, params, spec, opt) : tf_norm(g, params, spec, opt);
}

std::string DecayReport::to_csv() const {
    std::string out = "witness,radius,value,norm,ratio\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%.17g\n", r.witness.c_str(), r.radius, r.value, r.norm,
                      r.ratio);
        out += buf;
    }
    return out;
}

namespace {

void finalize(DecayReport& rep) {
    rep.max_ratio = 0;
    rep.min_ratio = INFINITY;
    for (const auto& r : rep.rows) {
        rep.max_ratio = std::max(rep.max_ratio, r.ratio);
        rep.min_ratio = std::min(rep.min_ratio, r.ratio);
    }
    if (rep.rows.empty()) rep.min_ratio = 0;
}

void require_U(const SpaceParams& params) {
    params.validate();
    if (params.d < 2) throw InvalidDimension("decay checks need d >= 2");
    if (!in_U(params)) throw OutOfHypothesis("parameters " + params.describe() + " are not in U");
}

std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

std::vector<RadialProfile> bump_train_corpus(std::uint64_t seed, int count, int d, const Grid1D& grid, double rmax) {
    std::mt19937_64 rng(seed);
    std::vector<RadialProfile> out;
    for (int c = 0; c < count; ++c) {
        std::uniform_int_distribution<int> nb(1, 6);
        std::uniform_real_distribution<double> pos(1.0, rmax), amp(-1.0, 1.0), width(0.3, 1.0);
        struct B {
            double c, w, a;
        };
        std::vector<B> bs;
        const int n = nb(rng);
        for (int i = 0; i < n; ++i) bs.push_back({pos(rng), width(rng), amp(rng)});
        out.push_back(RadialProfile::sample(
            grid,
            [bs](double t) {
                double v = 0;
                for (const auto& b : bs) v += b.a * bump((t - b.c) / b.w);
                return v;
            },
            d));
    }
    return out;
}

DecayReport check_decay4_upper(const SpaceParams& params, const std::vector<RadialProfile>& witnesses,
                               const DecayOptions& opt) {
    require_U(params);
    if (witnesses.empty()) throw InvalidInput("empty witness set");
    DecayReport rep;
    rep.check = "decay4-upper";
    rep.params = params;
    const double e = (params.d - 1) * inv(params.p);
    for (std::size_t w = 0; w < witnesses.size(); ++w) {
        const auto& g = witnesses[w];
        RatioRow row;
        row.witness = "corpus#" + std::to_string(w);
        for (std::size_t i = g.grid().first_nonnegative(); i < g.size(); ++i) {
            const double t = g.t(i);
            if (t < 1) continue;
            const double v = std::pow(t, e) * std::abs(g.value(i));
            if (v > row.value) {
                row.value = v;
                row.radius = t;
            }
        }
        row.norm = surrogate_norm(g, params, opt.surrogate);
        row.ratio = row.norm > 0 ? row.value / row.norm : 0.0;
        if (row.norm > 0) rep.rows.push_back(row);
    }
    finalize(rep);
    return rep;
}

DecayReport check_decay4_lower(const SpaceParams& params, const std::vector<int>& r_list, const DecayOptions& opt) {
    require_U(params);
    DecayReport rep;
    rep.check = "decay4-lower";
    rep.params = params;
    const double e = (params.d - 1) * inv(params.p);
    for (int r : r_list) {
        if (r < 1) throw InvalidInput("radii 2^r need r >= 1");
        const double x = std::ldexp(1.0, r);
        const double lambda = 2 * x - 1;
        const auto fam = make_f_j_lambda(1, lambda);
        const double c = std::pow(2.0, -r * e);
        const auto grid = Grid1D::uniform(opt.h, (lambda + 2) / 2 + 2);
        const auto g = fam.sample(grid).scaled(c).with_dim(params.d);
        RatioRow row;
        row.witness = fam.descriptor();
        row.radius = x;
        row.value = std::pow(x, e) * std::abs(g.at_node(x).value());
        row.norm = surrogate_norm(g, params, opt.surrogate);
        row.ratio = row.value / row.norm;
        rep.rows.push_back(row);
    }
    finalize(rep);
    return rep;
}

Decay4Report check_decay4(const SpaceParams& params, const std::vector<RadialProfile>& witnesses,
                          const std::vector<int>& r_list, const DecayOptions& opt) {
    return {check_decay4_upper(params, witnesses, opt), check_decay4_lower(params, r_list, opt)};
}

DivergenceReport check_decay4_divergence(const SpaceParams& params, const std::vector<double>& spacings,
                                         int translates) {
    params.validate();
    if (in_U(params)) throw OutOfHypothesis("divergence witness needs parameters outside U");
    if (!(inv(params.p) > sigma_p(params.p, params.d)))
        throw OutOfHypothesis("divergence witness needs 1/p > sigma_p(d)");
    if (params.scale == Scale::F && !(inv(params.p) > sigma_p(params.q, params.d)))
        throw OutOfHypothesis("divergence witness needs 1/p > sigma_q(d) in the F case");
    const double ip = inv(params.p);
    const double alpha = 2.0 / std::min(1.0, params.p);
    std::function<double(double)> g0;
    if (params.s < ip) {
        const double beta = 0.5 * (ip - params.s);
        g0 = [beta](double u) { return psi_cutoff(4 * u) * std::pow(std::abs(u), -beta); };
    } else {
        const double gamma = 0.5 * (1 - inv(params.q));
        g0 = [gamma](double u) { return psi_cutoff(4 * u) * std::pow(std::log(1 / std::abs(u)), gamma); };
    }
    std::vector<double> centers;
    for (int j = 1; j <= translates; ++j) centers.push_back(std::ldexp(1.0, j + 1));
    auto g = [&](double t) {
        double v = 0;
        for (int j = 1; j <= translates; ++j) {
            const double u = t - centers[j - 1];
            if (std::abs(u) < 0.375) v += std::pow(std::max(centers[j - 1], static_cast<double>(j)), -alpha) * g0(u);
        }
        return v;
    };
    DivergenceReport rep;
    for (double h : spacings) {
        // nodes (i + 1/2) h never hit the singular radii, which are multiples of h
        const double c = centers.front();
        const long lo = static_cast<long>(std::floor((c - 0.25) / h)), hi = static_cast<long>(std::ceil((c + 0.25) / h));
        double sup = 0;
        for (long i = lo; i <= hi; ++i) sup = std::max(sup, std::abs(g((static_cast<double>(i) + 0.5) * h)));
        rep.spacings.push_back(h);
        rep.sups.push_back(sup);
    }
    std::vector<std::size_t> order(spacings.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return spacings[a] > spacings[b]; });
    rep.diverging = order.size() >= 2;
    for (std::size_t i = 1; i < order.size(); ++i)
        if (!(rep.sups[order[i]] > rep.sups[order[i - 1]])) rep.diverging = false;
    return rep;
}

Decay2Report check_decay2(const SpaceParams& params, const std::vector<int>& r_list, const DecayOptions& opt) {
    require_U(params);
    const double ip = inv(params.p), dp = params.d * ip;
    if (!(sigma_p(params.p, params.d) < params.s && params.s < dp))
        throw OutOfHypothesis("decay at the origin needs sigma_p(d) < s < d/p");
    Decay2Report rep;
    rep.upper.check = "decay2-upper";
    rep.lower.check = "decay2-lower";
    rep.upper.params = rep.lower.params = params;
    const auto wit = make_blowup_witness(params.s, params.p, params.d);
    int rmax = 0;
    for (int r : r_list) rmax = std::max(rmax, r);
    // the blow-up witness against |x|^{s-d/p}
    std::vector<double> nodes;
    for (int r = rmax + 1; r >= 0; --r)
        for (int i = 0; i < 16; ++i) nodes.push_back(std::ldexp(1.0 + i / 16.0, -r));
    nodes.push_back(2.0);
    std::vector<double> full;
    for (auto it = nodes.rbegin(); it != nodes.rend(); ++it) full.push_back(-*it);
    full.insert(full.end(), nodes.begin(), nodes.end());
    const Grid1D lg(full, GridKind::LogSpaced, true);
    const auto wp = wit.sample(lg).with_dim(params.d);
    for (std::size_t i = lg.first_nonnegative(); i < lg.size(); ++i) {
        const double t = lg[i];
        if (t > 1) continue;
        const double v = std::pow(t, dp - params.s) * std::abs(wp.value(i));
        rep.witness_max = std::max(rep.witness_max, v);
        rep.upper.rows.push_back({wit.descriptor(), t, v, 1.0, v});
    }
    finalize(rep.upper);
    std::vector<double> R;
    for (int r = rmax; r >= 2; --r) R.push_back(std::ldexp(1.0, -r));
    std::sort(R.begin(), R.end());
    std::vector<double> Rfit;
    for (double x : R)
        if (std::find(r_list.begin(), r_list.end(), -static_cast<int>(std::lround(std::log2(x)))) != r_list.end())
            Rfit.push_back(x);
    rep.origin_fit = fit_decay_exponent(wp, Rfit);
    rep.origin_exponent = -rep.origin_fit.exponent;
    // f_{2+r,3} normalized
    for (int r : r_list) {
        const int j = 2 + r;
        const double x = std::ldexp(1.0, -r);
        const auto fam = make_f_j_lambda(j, 3.0);
        const double c = std::pow(2.0, -r * (params.s - dp));
        const auto grid = Grid1D::uniform(opt.h * std::ldexp(1.0, 1 - j), 4.0);
        const auto g = fam.sample(grid).scaled(c).with_dim(params.d);
        const double fx = g.at_node(x).value();
        rep.max_lower_identity_error =
            std::max(rep.max_lower_identity_error, std::abs(fx - std::pow(x, params.s - dp)) / std::pow(x, params.s - dp));
        RatioRow row;
        row.witness = fam.descriptor();
        row.radius = x;
        row.value = std::pow(x, dp - params.s) * std::abs(fx);
        row.norm = surrogate_norm(g, params, opt.surrogate);
        row.ratio = row.value / row.norm;
        rep.lower.rows.push_back(row);
    }
    finalize(rep.lower);
    return rep;
}

std::string Lim1Report::to_csv() const {
    std::string out = "witness,radius,ratio\n";
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g\n", quote(r.witness).c_str(), r.radius, r.ratio);
        out += buf;
    }
    return out;
}

Lim1Report check_lim1(const SpaceParams& params, const std::vector<std::string>& witnesses, const std::vector<int>& r_list,
                      bool with_norms) {
    params.validate();
    if (params.d < 2) throw InvalidDimension("d >= 2");
    const double dp = params.d * inv(params.p);
    if (std::abs(params.s - dp) > 1e-12) throw OutOfHypothesis("log-borderline check needs s = d/p");
    double e;
    if (params.scale == Scale::B) {
        if (!(params.q > 1)) throw OutOfHypothesis("B case needs q > 1");
        e = 1 - inv(params.q);
    } else {
        if (!(params.p > 1) || std::isinf(params.p)) throw OutOfHypothesis("F case needs 1 < p < inf");
        e = 1 - inv(params.p);
    }
    if (witnesses.empty()) throw InvalidInput("empty witness set");
    Lim1Report rep;
    for (const auto& desc : witnesses) {
        const auto fam = parse_family(desc);
        double lo = INFINITY, hi = 0;
        for (int r : r_list) {
            if (r < 1) throw InvalidInput("radii 2^-r need r >= 1");
            const double x = std::ldexp(1.0, -r);
            const double v = std::pow(-std::log(x), -e) * std::abs(fam(x));
            rep.rows.push_back({desc, x, v});
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        rep.witnesses.push_back(desc);
        rep.bands.push_back(lo > 0 ? hi / lo : INFINITY);
        if (with_norms) {
            const auto g = fam.sample(safe_grid(fam, std::ldexp(1.0, -10), 4.0)).with_dim(params.d);
            rep.norms.push_back(surrogate_norm(g, params));
        }
    }
    return rep;
}

StraussReport strauss_bump_train(int d, double p, const std::vector<int>& r_list, double h) {
    if (d < 2) throw InvalidDimension("d >= 2");
    if (!(p >= 1)) throw InvalidInput("Sobolev normalization needs p >= 1");
    if (r_list.size() < 4) throw UndefinedFit("Strauss fit needs at least 4 radii");
    int rmax = 0;
    for (int r : r_list) rmax = std::max(rmax, r);
    const double T = 1.5 * std::ldexp(1.0, rmax + 1) + 2;
    const auto grid = Grid1D::uniform(h, T);
    StraussReport rep;
    std::vector<double> total(grid.size(), 0.0), R;
    for (int r : r_list) {
        const double c = 1.5 * std::ldexp(1.0, r);
        const auto b = RadialProfile::sample(grid, [c](double t) { return bump((t - c) / 0.5); }, d);
        const double n = sobolev_radial_norm_1(b, p, d);
        rep.norms.push_back(n);
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += b.value(i) / n;
        R.push_back(std::ldexp(1.0, r));
    }
    std::sort(R.begin(), R.end());
    rep.fit = fit_decay_exponent(RadialProfile(grid, std::move(total), d), R);
    return rep;
}

}  // namespace radialfs
