// BV, sequence-space, trace and predicate experiments.
#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "experiments_impl.hpp"
#include "radialfs/bv_radial.hpp"
#include "radialfs/covering.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/norms.hpp"
#include "radialfs/radial_ops.hpp"
#include "radialfs/seqspace.hpp"
#include "radialfs/trace_ext.hpp"

namespace radialfs::detail {

namespace {

// 1-3 smooth bumps, either centered at 0 or on an annulus clear of the origin
std::vector<BumpComponent> random_bumps(std::mt19937_64& rng, double reach) {
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::uniform_int_distribution<int> n_of(1, 3);
    std::vector<BumpComponent> out;
    const int n = n_of(rng);
    for (int i = 0; i < n; ++i) {
        BumpComponent b;
        if (U(rng) < 0.4) {
            b.center = 0;
            b.width = reach * (0.2 + 0.6 * U(rng));
        } else {
            b.width = reach * (0.08 + 0.2 * U(rng));
            b.center = b.width + (reach - 2 * b.width) * U(rng);
        }
        b.amplitude = (U(rng) < 0.5 ? -1 : 1) * (0.2 + 1.8 * U(rng));
        out.push_back(b);
    }
    return out;
}

}  // namespace

void run_bv_decay(Ctx& c) {
    const auto& cfg = c.cfg;
    const auto seed = cfg.require_seed();
    const int count = cfg.integer("corpus.count", 100);
    const auto dims = cfg.ints("corpus.dims");
    const int steps = cfg.integer("corpus.steps", 10);
    const double rmin = cfg.num("corpus.rmin", 0.1), rmax = cfg.num("corpus.rmax", 10);
    const auto radii = cfg.nums("single_step.radii");
    const auto amps = cfg.nums("single_step.amplitudes");
    const int pairing = cfg.integer("pairing.count", 10);
    cfg.reject_unused();
    if (count < 1) throw ConfigError("empty corpus", cfg.line_of("corpus.count"), "corpus.count");

    struct Case {
        int d;
        bool monotone;
        std::string descriptor;
        BVDecayReport rep;
        double pairing_defect = -1;
    };
    std::vector<Case> cases(static_cast<std::size_t>(count));
    parallel_for(
        cases.size(),
        [&](std::size_t i) {
            auto& cs = cases[i];
            cs.d = dims[i % dims.size()];
            cs.monotone = (i / dims.size()) % 2 == 0;
            const auto g = BVProfile::random_staircase(derive_seed(seed, i), steps, cs.d, cs.monotone, rmin, rmax);
            cs.descriptor = g.descriptor();
            cs.rep = bv_decay_check(g);
            if (static_cast<int>(i) < pairing) cs.pairing_defect = bv_pairing_check(g).max_relative_defect;
        },
        c.opt);

    Csv rows("case,d,radius,left,lhs,tail,norm_ratio");
    Csv corpus("case,d,monotone,descriptor");
    std::size_t tail_fail = 0, norm_fail = 0, zero_fail = 0;
    double worst_ratio = 0, worst_pairing = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& cs = cases[i];
        corpus.row(static_cast<unsigned long>(i), cs.d, cs.monotone, cs.descriptor);
        for (auto& r : cs.rep.rows)
            rows.row(static_cast<unsigned long>(i), cs.d, r.radius, r.left, r.lhs, r.tail, r.norm_ratio);
        tail_fail += !cs.rep.tail_bound_holds;
        norm_fail += !cs.rep.norm_bound_holds;
        zero_fail += !cs.rep.eventually_zero;
        worst_ratio = std::max(worst_ratio, cs.rep.max_tail_ratio);
        worst_pairing = std::max(worst_pairing, cs.pairing_defect);
    }
    c.artifact("staircases.csv", corpus.str());
    c.artifact("decay_rows.csv", rows.str());
    c.check(assert_at_most("staircases violating the tail bound", static_cast<double>(tail_fail), 0, kExactIdentity));
    c.check(assert_at_most("staircases violating the norm bound", static_cast<double>(norm_fail), 0, kExactIdentity));
    c.check(assert_at_most("staircases not vanishing beyond the support", static_cast<double>(zero_fail), 0,
                           kExactIdentity));
    c.check(assert_at_most("largest tail ratio", worst_ratio, 1.0, kExactIdentity));

    Csv single("d,radius,amplitude,max_tail_ratio");
    double eq_err = 0;
    for (int d : dims)
        for (double r : radii)
            for (double a : amps) {
                const BVProfile g(d, {Step{r, a}});
                const auto rep = bv_decay_check(g);
                single.row(d, r, a, rep.max_tail_ratio);
                eq_err = std::max(eq_err, std::abs(rep.max_tail_ratio - 1));
            }
    c.artifact("single_step.csv", single.str());
    c.check(assert_at_most("single-step equality error", eq_err, 1e-12, kExactIdentity));
    if (pairing > 0)
        c.check(assert_at_most("distributional derivative pairing defect", worst_pairing, 1e-6, kFrozenBaseline));
}

void run_bv_equivalence(Ctx& c) {
    const auto& cfg = c.cfg;
    const auto seed = cfg.require_seed();
    const int n_stairs = cfg.integer("corpus.staircases", 12);
    const int n_bumps = cfg.integer("corpus.bumps", 8);
    const int n_mixed = cfg.integer("corpus.mixed", 8);
    const auto dims = cfg.ints("corpus.dims");
    const auto dilations = cfg.nums("corpus.dilations");
    const std::string conv_name = cfg.str("check.convention", "isotropic");
    const int n_cross = cfg.integer("check.cross_check_bumps", 3);
    cfg.reject_unused();
    BVConvention conv;
    if (conv_name == "isotropic")
        conv = BVConvention::Isotropic;
    else if (conv_name == "coordinate-sum")
        conv = BVConvention::CoordinateSum;
    else
        throw ConfigError("convention must be isotropic or coordinate-sum", cfg.line_of("check.convention"),
                          "check.convention");
    if (n_stairs + n_bumps + n_mixed < 1) throw ConfigError("empty corpus", 0, "corpus");
    for (double l : dilations)
        if (!(l > 0)) throw ConfigError("dilations must be positive", cfg.line_of("corpus.dilations"), "corpus.dilations");

    struct Case {
        std::string kind;
        int d;
        BVProfile g{2, {}};
        double ratio = 0, other_ratio = 0, dilation_defect = 0;
        std::optional<double> cross;
    };
    std::vector<Case> cases;
    std::size_t idx = 0;
    for (auto [kind, n] : {std::pair<std::string, int>{"staircase", n_stairs}, {"bumps", n_bumps}, {"mixed", n_mixed}})
        for (int i = 0; i < n; ++i, ++idx) {
            const int d = dims[idx % dims.size()];
            std::mt19937_64 rng(derive_seed(seed, idx));
            std::vector<Step> steps;
            std::vector<BumpComponent> bumps;
            if (kind != "bumps") {
                const auto st = BVProfile::random_staircase(rng(), 1 + i % 10, d, i % 2 == 0, 0.1, 10.0);
                steps = st.steps();
            }
            if (kind != "staircase") bumps = random_bumps(rng, 6.0);
            cases.push_back({kind, d, BVProfile(d, steps, bumps), 0, 0, 0, std::nullopt});
        }
    const auto other = conv == BVConvention::Isotropic ? BVConvention::CoordinateSum : BVConvention::Isotropic;
    int crossed = 0;
    std::vector<char> want_cross(cases.size(), 0);
    for (std::size_t i = 0; i < cases.size(); ++i)
        if (cases[i].kind == "bumps" && crossed < n_cross) {
            want_cross[i] = 1;
            ++crossed;
        }
    parallel_for(
        cases.size(),
        [&](std::size_t i) {
            auto& cs = cases[i];
            const auto rep = bv_equivalence_check(cs.g, conv, want_cross[i]);
            cs.ratio = rep.ratio;
            cs.cross = rep.gradient_cross_check;
            cs.other_ratio = bv_equivalence_check(cs.g, other).ratio;
            for (double l : dilations) {
                const double rl = bv_equivalence_check(cs.g.dilated(l), conv).ratio;
                cs.dilation_defect = std::max(cs.dilation_defect, std::abs(rl / cs.ratio - 1));
            }
        },
        c.opt);

    Csv csv("case,kind,d,ratio,other_convention_ratio,dilation_defect,descriptor");
    std::map<int, std::pair<double, double>> bracket, other_bracket;
    double worst_dil = 0, worst_cross = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& cs = cases[i];
        csv.row(static_cast<unsigned long>(i), cs.kind, cs.d, cs.ratio, cs.other_ratio, cs.dilation_defect,
                cs.g.descriptor());
        auto upd = [](std::map<int, std::pair<double, double>>& m, int d, double r) {
            auto it = m.find(d);
            if (it == m.end())
                m[d] = {r, r};
            else
                it->second = {std::min(it->second.first, r), std::max(it->second.second, r)};
        };
        upd(bracket, cs.d, cs.ratio);
        upd(other_bracket, cs.d, cs.other_ratio);
        worst_dil = std::max(worst_dil, cs.dilation_defect);
        if (cs.cross) worst_cross = std::max(worst_cross, std::abs(*cs.cross - 1));
    }
    c.artifact("ratios.csv", csv.str());
    for (auto& [d, b] : bracket) {
        const std::string tag = " d=" + std::to_string(d);
        c.check(assert_at_most("ratio bracket spread" + tag, b.second / b.first, 4.0, kAcceptanceBound));
        if (conv == BVConvention::Isotropic) {
            // isotropic total variation of ext g is the sphere area times the 1-D weighted variation
            const double w = sphere_area(d);
            c.check(assert_close("ratio bracket low end over sphere area" + tag, b.first / w, 1.0, 1e-9,
                                 kExactIdentity));
            c.check(assert_close("ratio bracket high end over sphere area" + tag, b.second / w, 1.0, 1e-9,
                                 kExactIdentity));
        }
        const auto& o = other_bracket[d];
        c.note("other convention bracket" + tag + ": [" + fmt(o.first) + ", " + fmt(o.second) + "]");
    }
    c.check(assert_at_most("dilation defect", worst_dil, 1e-6, kAcceptanceBound));
    if (crossed > 0)
        c.check(assert_at_most("Cartesian gradient cross check on smooth bumps", worst_cross, 1e-4, kFrozenBaseline));
}

void run_seq_identities(Ctx& c) {
    const auto& cfg = c.cfg;
    const auto seed = cfg.require_seed();
    const int count = cfg.integer("corpus.count", 100);
    const int max_level = cfg.integer("corpus.max_level", 6);
    const int max_k = cfg.integer("corpus.max_k", 24);
    cfg.reject_unused();
    if (count < 1) throw ConfigError("empty corpus", cfg.line_of("corpus.count"), "corpus.count");
    if (max_level < 0 || max_k < 1) throw ConfigError("grid sizes must be positive", 0, "corpus");

    const std::vector<double> p_choices = {0.5, 1, 1.5, 2, 3, 4};
    const std::vector<double> q_choices = {0.5, 1, 2, 3, kInf};
    struct Case {
        SpaceParams prm;
        double eq_rel = 0;  // |b - f| / max at p = q
        int homog = 0, mono_q = 0, mono_s = 0, triangle = 0, trunc = 0;
    };
    std::vector<Case> cases(static_cast<std::size_t>(count));
    parallel_for(
        cases.size(),
        [&](std::size_t i) {
            auto& cs = cases[i];
            std::mt19937_64 rng(derive_seed(seed, i));
            std::uniform_real_distribution<double> U(0, 1);
            std::normal_distribution<double> N(0, 1);
            auto pick = [&](const std::vector<double>& v) { return v[static_cast<std::size_t>(U(rng) * v.size()) % v.size()]; };
            auto random_grid = [&] {
                CoefficientGrid g;
                const int J = static_cast<int>(U(rng) * (max_level + 1)) % (max_level + 1);
                for (int j = 0; j <= J; ++j) {
                    const int K = 1 + static_cast<int>(U(rng) * max_k) % max_k;
                    for (int k = 0; k < K; ++k) g.set(j, k, U(rng) < 0.3 ? 0.0 : N(rng));
                }
                g.set(0, 0, g.get(0, 0) + 1.0);  // never identically zero
                return g;
            };
            const auto a = random_grid(), b = random_grid();
            SpaceParams prm{-1 + 3 * U(rng), pick(p_choices), pick(q_choices), 1 + static_cast<int>(U(rng) * 3) % 3,
                            Scale::B};
            cs.prm = prm;
            auto norm = [](const CoefficientGrid& g, SpaceParams s, Scale sc) {
                s.scale = sc;
                return sc == Scale::B ? seq_norm_bspqd(g, s) : seq_norm_fspqd(g, s);
            };
            SpaceParams diag = prm;
            diag.q = prm.p;
            const double bb = norm(a, diag, Scale::B), ff = norm(a, diag, Scale::F);
            cs.eq_rel = std::abs(bb - ff) / std::max(bb, ff);
            const double lam = (U(rng) < 0.5 ? -1 : 1) * (0.1 + 3 * U(rng));
            CoefficientGrid sum = a;
            for (int j = 0; j <= b.max_level(); ++j)
                for (int k = 0; k < b.level_size(j); ++k) sum.add(j, k, b.get(j, k));
            for (Scale sc : {Scale::B, Scale::F}) {
                const double n = norm(a, prm, sc);
                if (std::abs(norm(a.scaled(lam), prm, sc) - std::abs(lam) * n) > 1e-12 * std::abs(lam) * n) ++cs.homog;
                for (double q2 : q_choices) {
                    if (!(q2 > prm.q)) continue;
                    SpaceParams w = prm;
                    w.q = q2;
                    if (norm(a, w, sc) > n * (1 + 1e-12)) ++cs.mono_q;
                }
                SpaceParams hi = prm;
                hi.s += 0.5;
                if (norm(a, hi, sc) < n * (1 - 1e-12)) ++cs.mono_s;
                const double cst = std::pow(2.0, std::max(0.0, 1 / std::min(prm.p, prm.q) - 1));
                if (norm(sum, prm, sc) > cst * (n + norm(b, prm, sc)) * (1 + 1e-12)) ++cs.triangle;
                for (int J0 = 0; J0 < a.max_level(); ++J0)
                    if (norm(a.truncated(J0), prm, sc) > n * (1 + 1e-12)) ++cs.trunc;
            }
        },
        c.opt);

    Csv csv("case,s,p,q,d,b_f_relative_gap,homogeneity,monotone_q,monotone_s,quasi_triangle,truncation");
    double worst_eq = 0;
    int homog = 0, mq = 0, ms = 0, tri = 0, tr = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& cs = cases[i];
        csv.row(static_cast<unsigned long>(i), cs.prm.s, cs.prm.p, cs.prm.q, cs.prm.d, cs.eq_rel, cs.homog, cs.mono_q,
                cs.mono_s, cs.triangle, cs.trunc);
        worst_eq = std::max(worst_eq, cs.eq_rel);
        homog += cs.homog;
        mq += cs.mono_q;
        ms += cs.mono_s;
        tri += cs.triangle;
        tr += cs.trunc;
    }
    c.artifact("cases.csv", csv.str());
    c.check(assert_at_most("b = f at p = q, largest relative gap", worst_eq, 1e-10, kExactIdentity));
    c.check(assert_at_most("homogeneity violations", homog, 0, kExactIdentity));
    c.check(assert_at_most("monotonicity in q violations", mq, 0, kExactIdentity));
    c.check(assert_at_most("monotonicity in s violations", ms, 0, kExactIdentity));
    c.check(assert_at_most("quasi-triangle violations", tri, 0, kExactIdentity));
    c.check(assert_at_most("level truncation violations", tr, 0, kExactIdentity));
}

void run_trace_roundtrip(Ctx& c) {
    const auto& cfg = c.cfg;
    const auto seed = cfg.require_seed();
    const int count = cfg.integer("corpus.count", 50);
    const auto dims = cfg.ints("corpus.dims");
    const double h = cfg.num("grid.h", 1.0 / 64), T = cfg.num("grid.T", 4);
    const double ah = cfg.num("fields.axis_h", 1.0 / 8), aT = cfg.num("fields.axis_T", 3);
    const auto ms = cfg.ints("fields.m");
    cfg.reject_unused();
    if (count < 1) throw ConfigError("empty corpus", cfg.line_of("corpus.count"), "corpus.count");
    for (int d : dims)
        if (d < 1 || d > 3) throw ConfigError("dims must be 1, 2 or 3", cfg.line_of("corpus.dims"), "corpus.dims");
    const auto grid = Grid1D::uniform(h, T);
    const auto axis = Grid1D::uniform(ah, aT);

    struct Case {
        int d = 2;
        std::string descriptor;
        double node_gap = 0, field_gap = 0;
        bool radial = true;
        std::vector<double> lhs, rhs;
    };
    std::vector<Case> cases(static_cast<std::size_t>(count));
    parallel_for(
        cases.size(),
        [&](std::size_t i) {
            auto& cs = cases[i];
            cs.d = dims[i % dims.size()];
            std::mt19937_64 rng(derive_seed(seed, i));
            const BVProfile shape(cs.d, {}, random_bumps(rng, std::min(T, aT) - 0.5));
            cs.descriptor = shape.descriptor();
            const auto g = shape.sample(grid);

            // trace o ext on the profile grid
            const auto back = trace(extend(g, cs.d));
            for (std::size_t n = 0; n < g.size(); ++n)
                cs.node_gap = std::max(cs.node_gap, std::abs(back.value(n) - g.value(n)));
            // ext o trace on profile-backed fields, compared at random points
            const auto f = extend(g, cs.d);
            const auto f2 = extend(trace(f), cs.d);
            std::uniform_real_distribution<double> U(-T / std::sqrt(cs.d), T / std::sqrt(cs.d));
            std::vector<double> x(cs.d);
            for (int k = 0; k < 64; ++k) {
                for (auto& v : x) v = U(rng);
                cs.field_gap = std::max(cs.field_gap, std::abs(f(x) - f2(x)));
            }

            // tensor-sampled field and its trace
            const TensorGrid tg{cs.d, static_cast<int>(axis.size()), axis.front(), axis.spacing()};
            std::vector<double> vals(tg.size());
            for (std::size_t n = 0; n < vals.size(); ++n) {
                tg.point(n, x);
                double r2 = 0;
                for (double v : x) r2 += v * v;
                vals[n] = shape.value(std::sqrt(r2));
            }
            const auto F = RadialGridField::from_samples(axis, cs.d, std::move(vals), "bump corpus");
            cs.radial = radiality(F).radial();
            const auto tr = trace(F);
            for (int m : ms) {
                cs.lhs.push_back(cm_norm(tr, m));
                cs.rhs.push_back(cm_norm(F, m));
            }
        },
        c.opt);

    Csv csv("case,d,m,trace_cm,field_cm,ratio");
    Csv corpus("case,d,node_gap,field_gap,descriptor");
    double node_gap = 0, field_gap = 0, lo = INFINITY, hi = 0;
    int violations = 0, nonradial = 0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        auto& cs = cases[i];
        corpus.row(static_cast<unsigned long>(i), cs.d, cs.node_gap, cs.field_gap, cs.descriptor);
        node_gap = std::max(node_gap, cs.node_gap);
        field_gap = std::max(field_gap, cs.field_gap);
        nonradial += !cs.radial;
        for (std::size_t k = 0; k < ms.size(); ++k) {
            const double r = cs.rhs[k] / cs.lhs[k];
            csv.row(static_cast<unsigned long>(i), cs.d, ms[k], cs.lhs[k], cs.rhs[k], r);
            if (cs.lhs[k] > cs.rhs[k]) ++violations;
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    c.artifact("corpus.csv", corpus.str());
    c.artifact("cm_norms.csv", csv.str());
    c.check(assert_at_most("trace o ext largest node gap", node_gap, 0, kExactIdentity));
    c.check(assert_at_most("ext o trace largest field gap", field_gap, 0, kExactIdentity));
    c.check(assert_at_most("sampled fields failing the radiality check", nonradial, 0, kExactIdentity));
    c.check(assert_at_most("C^m trace inequality violations", violations, 0, kExactIdentity));
    c.note("field over trace C^m ratio bracket [" + fmt(lo) + ", " + fmt(hi) + "]");
}

namespace {

// "(c,w,A),(c,w,A)"
std::vector<BumpComponent> parse_bump_list(const std::string& text, int line, const std::string& key) {
    std::vector<BumpComponent> out;
    std::size_t pos = 0;
    while ((pos = text.find('(', pos)) != std::string::npos) {
        const auto end = text.find(')', pos);
        if (end == std::string::npos) throw ConfigError("unbalanced parenthesis in '" + text + "'", line, key);
        const std::string body = text.substr(pos + 1, end - pos - 1);
        std::vector<double> v;
        std::size_t a = 0;
        while (a <= body.size()) {
            auto b = body.find(',', a);
            if (b == std::string::npos) b = body.size();
            try {
                v.push_back(parse_number(body.substr(a, b - a)));
            } catch (const ConfigError&) {
                throw ConfigError("bad bump component '(" + body + ")'", line, key);
            }
            a = b + 1;
        }
        if (v.size() != 3 || !(v[1] > 0) || v[0] < 0 || (v[0] > 0 && v[0] < v[1]))
            throw ConfigError("bump needs (center, width, amplitude) with center 0 or center >= width", line, key);
        out.push_back({v[0], v[1], v[2]});
        pos = end + 1;
    }
    if (out.empty()) throw ConfigError("empty bump list", line, key);
    return out;
}

}  // namespace

void run_sobolev_reduction(Ctx& c) {
    const auto& cfg = c.cfg;
    const auto dims = cfg.ints("sweep.d");
    const auto ps = cfg.nums("sweep.p");
    const auto shapes = cfg.strings("corpus.bumps");
    const int n2 = cfg.integer("grid.n2", 1024), n3 = cfg.integer("grid.n3", 192);
    const double ph = cfg.num("grid.profile_h", 1.0 / 4096);
    cfg.reject_unused();
    for (int d : dims)
        if (d < 2 || d > 3) throw ConfigError("dimensions 2 and 3 only", cfg.line_of("sweep.d"), "sweep.d");
    for (double p : ps)
        if (!(p >= 1) || std::isinf(p)) throw ConfigError("p must be finite and >= 1", cfg.line_of("sweep.p"), "sweep.p");
    std::vector<std::vector<BumpComponent>> corpus;
    for (auto& s : shapes) corpus.push_back(parse_bump_list(s, cfg.line_of("corpus.bumps"), "corpus.bumps"));

    struct Case {
        std::size_t shape;
        int d;
        std::vector<double> radial, cartesian;
    };
    std::vector<Case> cases;
    for (std::size_t s = 0; s < corpus.size(); ++s)
        for (int d : dims) cases.push_back({s, d, {}, {}});
    parallel_for(
        cases.size(),
        [&](std::size_t i) {
            auto& cs = cases[i];
            const BVProfile shape(cs.d, {}, corpus[cs.shape]);
            const double reach = shape.support_end();
            // reduction side: finite-difference derivative of the sampled profile
            const auto g = shape.sample(Grid1D::uniform(ph, reach + 0.25));
            const auto g1 = derivative(g.grid(), g.values());
            for (double p : ps)
                cs.radial.push_back(std::pow(sphere_area(cs.d) / 2, 1 / p) * weighted_lp_norm(g.grid(), g1, p, cs.d));
            // Cartesian side: midpoint rule on [-T, T]^d, central differences of the field
            const double T = reach + 0.05;
            const int n = cs.d == 2 ? n2 : n3;
            const double H = 2 * T / n, delta = 1e-5;
            std::vector<double> sums(ps.size(), 0.0);
            std::vector<double> x(cs.d);
            auto f = [&](const std::vector<double>& y) {
                double r2 = 0;
                for (double v : y) r2 += v * v;
                return shape.value(std::sqrt(r2));
            };
            std::vector<int> idx(cs.d, 0);
            const long total = static_cast<long>(std::pow(n, cs.d));
            for (long flat = 0; flat < total; ++flat) {
                long rem = flat;
                double r2 = 0;
                for (int a = cs.d - 1; a >= 0; --a) {
                    x[a] = -T + (rem % n + 0.5) * H;
                    rem /= n;
                    r2 += x[a] * x[a];
                }
                if (r2 >= T * T) continue;
                double grad2 = 0;
                for (int a = 0; a < cs.d; ++a) {
                    const double keep = x[a];
                    x[a] = keep + delta;
                    const double fp = f(x);
                    x[a] = keep - delta;
                    const double fm = f(x);
                    x[a] = keep;
                    const double da = (fp - fm) / (2 * delta);
                    grad2 += da * da;
                }
                const double gn = std::sqrt(grad2);
                for (std::size_t k = 0; k < ps.size(); ++k) sums[k] += std::pow(gn, ps[k]);
            }
            const double cell = std::pow(H, cs.d);
            for (std::size_t k = 0; k < ps.size(); ++k) cs.cartesian.push_back(std::pow(sums[k] * cell, 1 / ps[k]));
        },
        c.opt);

    Csv csv("shape,d,p,radial_reduction,cartesian,relative_difference");
    double worst = 0;
    for (auto& cs : cases)
        for (std::size_t k = 0; k < ps.size(); ++k) {
            const double rel = std::abs(cs.radial[k] - cs.cartesian[k]) / cs.cartesian[k];
            csv.row(shapes[cs.shape], cs.d, ps[k], cs.radial[k], cs.cartesian[k], rel);
            worst = std::max(worst, rel);
        }
    c.artifact("reduction.csv", csv.str());
    c.check(assert_at_most("largest relative difference", worst, 1e-4, kAcceptanceBound));
}

void run_predicate_tables(Ctx& c) {
    c.cfg.reject_unused();
    Csv csv("predicate,arguments,expected,got");
    auto row = [&](const std::string& pred, const std::string& args, bool expected, bool got) {
        csv.row(pred, args, expected, got);
        c.check(assert_true(pred + "(" + args + ") == " + (expected ? "true" : "false"), expected == got,
                            kPaperExample));
    };
    auto num_row = [&](const std::string& pred, const std::string& args, double expected, double got) {
        csv.row(pred, args, expected, got);
        c.check(assert_close(pred + "(" + args + ")", got, expected, 1e-15, kPaperExample));
    };
    num_row("sigma_p", "p=1,d=5", 0, sigma_p(1, 5));
    num_row("sigma_p", "p=1/2,d=2", 2, sigma_p(0.5, 2));
    num_row("sigma_p", "p=2/3,d=3", 1.5, sigma_p(2.0 / 3, 3));
    num_row("sigma_pq", "p=2,q=2,d=3", 0, sigma_pq(2, 2, 3));
    num_row("sigma_pq", "p=1,q=1/2,d=2", 2, sigma_pq(1, 0.5, 2));
    num_row("sigma_pq", "p=1/2,q=1,d=2", 2, sigma_pq(0.5, 1, 2));

    row("in_U", "s=1,p=1,q=inf,F", true, in_U({1, 1, kInf, 2, Scale::F}));
    row("in_U", "s=1/2,p=2,q=1,B", true, in_U({0.5, 2, 1, 2, Scale::B}));
    row("in_U", "s=1/2,p=2,q=2,B", false, in_U({0.5, 2, 2, 2, Scale::B}));

    row("embeds_in_Linfty", "s=2,p=2,q=2,d=3,B", true, embeds_in_Linfty({2, 2, 2, 3, Scale::B}));
    row("embeds_in_Linfty", "s=1.5,p=2,q=1,d=3,B", true, embeds_in_Linfty({1.5, 2, 1, 3, Scale::B}));
    row("embeds_in_Linfty", "s=1.5,p=2,q=2,d=3,F", false, embeds_in_Linfty({1.5, 2, 2, 3, Scale::F}));

    row("trace_lands_in_Sprime", "s=1,p=1,q=1,d=2,B", true, trace_lands_in_Sprime({1, 1, 1, 2, Scale::B}));
    row("trace_lands_in_Sprime", "s=0.9,p=1,q=1,d=2,B", false, trace_lands_in_Sprime({0.9, 1, 1, 2, Scale::B}));
    row("trace_lands_in_Sprime", "s=d/p-1,p=1/2,q=2,d=2,F", true, trace_lands_in_Sprime({3, 0.5, 2, 2, Scale::F}));

    row("weighted_Lp_in_Sprime", "p=3,d=2", true, weighted_Lp_in_Sprime(3, 2));
    row("weighted_Lp_in_Sprime", "p=2,d=2", false, weighted_Lp_in_Sprime(2, 2));
    row("weighted_Lp_in_Sprime", "p=1,d=3", false, weighted_Lp_in_Sprime(1, 3));

    row("in_U_t", "alpha=0,sigma=1,t=1", true, in_U_t(0, 1, 1));
    row("in_U_t", "alpha=1,sigma=0,t=inf", true, in_U_t(1, 0, kInf));
    row("in_U_t", "alpha=1/2,sigma=0.6,t=2", true, in_U_t(0.5, 0.6, 2));
    c.artifact("predicates.csv", csv.str());
}

void run_classification_map(Ctx& c) {
    const auto& cfg = c.cfg;
    const std::string name = cfg.str("map.region");
    const auto rect = cfg.nums("map.rect");
    const int res = cfg.integer("map.res", 41);
    const int d = cfg.integer("map.d", 2);
    const double q = cfg.num("map.q", 2);
    const std::string sc = cfg.str("map.scale", "B");
    cfg.reject_unused();
    if (rect.size() != 4 || !(rect[0] < rect[1]) || !(rect[2] < rect[3]))
        throw ConfigError("rect needs a,b,c,d with a < b and c < d", cfg.line_of("map.rect"), "map.rect");
    if (res < 2) throw ConfigError("res must be >= 2", cfg.line_of("map.res"), "map.res");
    if (sc != "B" && sc != "F") throw ConfigError("scale must be B or F", cfg.line_of("map.scale"), "map.scale");
    ParamRegion region = [&] {
        try {
            return make_region(name);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), cfg.line_of("map.region"), "map.region");
        }
    }();
    const auto cells = classification_map(region, rect[0], rect[1], rect[2], rect[3], res, d, q,
                                          sc == "B" ? Scale::B : Scale::F);
    c.artifact("raster.csv", raster_csv(cells));
    std::map<std::string, int> counts;
    for (auto& cell : cells) ++counts[cell.label];
    Csv tally("label,cells");
    for (auto& [label, n] : counts) tally.row(label, n);
    c.artifact("labels.csv", tally.str());
    if (name == "fig2") {
        // documented anchor points, classified directly
        const Scale scl = sc == "B" ? Scale::B : Scale::F;
        auto at = [&](double ip, double s) { return region.classifier(SpaceParams{s, 1 / ip, q, d, scl}); };
        c.check(assert_true("fig2 (1/p=1, s=1) is decay", at(1, 1) == "decay", kPaperExample));
        c.check(assert_true("fig2 (1/p=2, s=0.1) is singular", at(2, 0.1) == "singular radial distributions",
                            kPaperExample));
        c.check(assert_true("fig2 (1/p=1e-3, s=0.5) is decay", at(1e-3, 0.5) == "decay", kPaperExample));
    }
    c.check(assert_close("raster cell count", static_cast<double>(cells.size()), static_cast<double>(res) * res, 0,
                         kExactIdentity));
}

}  // namespace radialfs::detail
