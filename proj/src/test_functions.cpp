#include "radialfs/test_functions.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "radialfs/bumps.hpp"
#include "radialfs/errors.hpp"
#include "radialfs/spaces.hpp"

namespace radialfs {

std::string TestFamily::descriptor() const {
    std::string out = name + "(";
    bool first = true;
    char buf[64];
    for (const auto& [k, v] : params) {
        if (!first) out += ",";
        first = false;
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += k + "=" + buf;
    }
    return out + ")";
}

RadialProfile TestFamily::sample(const Grid1D& grid) const {
    for (double r : singular_radii)
        for (std::size_t i = grid.first_nonnegative(); i < grid.size(); ++i)
            if (grid[i] == r) throw InvalidInput(name + ": grid node on a singular radius");
    return RadialProfile::sample(grid, eval);
}

TestFamily make_f_alpha(double alpha, double p) {
    if (!(p > 0)) throw InvalidInput("f_alpha: p > 0");
    if (!(alpha > 0) || !(alpha < std::min(1.0, 1.0 / p))) throw InvalidInput("f_alpha: alpha in (0, min(1,1/p))");
    TestFamily f;
    f.name = "f_alpha";
    f.params = {{"alpha", alpha}, {"p", p}};
    f.eval = [alpha](double t) {
        const double r = std::abs(t), phi = ring_bump(r);
        return phi == 0.0 ? 0.0 : phi * std::pow(std::abs(r - 1), -alpha);
    };
    std::ostringstream os;
    os << "in B^{" << 1.0 / p - alpha << "}_{p,inf}, not in B^{1/p-alpha}_{p,q} for q<inf";
    f.asymptotics = os.str();
    f.singular_radii = {1.0};
    f.support_lo = 0.5;
    f.support_hi = 2.0;
    return f;
}

TestFamily make_f_alpha_delta(double alpha, double delta) {
    if (!(alpha > 0) || !(alpha < 1)) throw InvalidInput("f_alpha_delta: alpha in (0,1)");
    if (!(delta > 0)) throw InvalidInput("f_alpha_delta: delta > 0");
    TestFamily f;
    f.name = "f_alpha_delta";
    f.params = {{"alpha", alpha}, {"delta", delta}};
    f.eval = [alpha, delta](double t) {
        const double r = std::abs(t), phi = ring_bump(r);
        if (phi == 0.0) return 0.0;
        const double e = std::abs(r - 1);
        return phi * std::pow(e, -alpha) * std::pow(-std::log(e), -delta);
    };
    f.asymptotics = "ring singularity of order alpha with logarithmic correction delta";
    f.singular_radii = {1.0};
    f.support_lo = 0.5;
    f.support_hi = 2.0;
    return f;
}

TestFamily make_Phi_alpha(double alpha) {
    if (!(alpha > 0)) throw InvalidInput("Phi_alpha: alpha > 0");
    TestFamily f;
    f.name = "Phi_alpha";
    f.params = {{"alpha", alpha}};
    f.eval = [alpha](double t) { return std::pow(std::max(0.0, 1.0 - t * t), alpha); };
    std::ostringstream os;
    os << "in B^{1/p+" << alpha << "}_{p,inf} when 1/p+alpha > sigma_p(d)";
    f.asymptotics = os.str();
    f.support_lo = 0;
    f.support_hi = 1;
    return f;
}

TestFamily make_f_j_lambda(int j, double lambda) {
    if (j < 1) throw InvalidInput("f_j_lambda: j >= 1");
    if (!(lambda > 2)) throw InvalidInput("f_j_lambda: lambda > 2");
    TestFamily f;
    f.name = "f_j_lambda";
    f.params = {{"j", static_cast<double>(j)}, {"lambda", lambda}};
    const double sc = std::ldexp(1.0, j);
    f.eval = [sc, lambda](double t) { return ring_bump(sc * std::abs(t) - lambda); };
    f.asymptotics = "B-norm ~ 2^{j(s-d/p)} lambda^{(d-1)/p}; L_p norm ~ 2^{-jd/p} lambda^{(d-1)/p}";
    f.support_lo = (lambda - 2) / sc;
    f.support_hi = (lambda + 2) / sc;
    return f;
}

TestFamily make_f_alpha_sigma(double alpha, double sigma) {
    TestFamily f;
    f.name = "f_alpha_sigma";
    f.params = {{"alpha", alpha}, {"sigma", sigma}};
    f.eval = [alpha, sigma](double t) {
        const double r = std::abs(t), ps = psi_cutoff(r);
        if (ps == 0.0) return 0.0;
        const double l = std::abs(std::log(r));
        const double ll = std::abs(std::log(l));
        return ps * std::pow(l, alpha) * std::pow(ll, -sigma);
    };
    f.asymptotics = "in RB^{d/p}_{p,q} iff (alpha,sigma) in U_q";
    f.singular_radii = {0.0, std::exp(-1.0), 1.0};
    f.support_lo = 0;
    f.support_hi = 1.5;
    return f;
}

TestFamily make_psi_cutoff() {
    TestFamily f;
    f.name = "psi_cutoff";
    f.eval = [](double t) { return psi_cutoff(t); };
    f.asymptotics = "smooth, 1 on |t|<=1, 0 on |t|>=3/2";
    f.support_lo = 0;
    f.support_hi = 1.5;
    return f;
}

TestFamily make_blowup_witness(double s, double p, int d) {
    if (!(p > 0) || d < 1) throw InvalidInput("blowup witness: p > 0, d >= 1");
    TestFamily f;
    f.name = "blowup";
    f.params = {{"s", s}, {"p", p}, {"d", static_cast<double>(d)}};
    const double e = s - d / p;
    f.eval = [e](double t) {
        const double r = std::abs(t), ps = psi_cutoff(r);
        return ps == 0.0 ? 0.0 : ps * std::pow(r, e);
    };
    f.asymptotics = "|x|^{d/p-s} |f(x)| = psi(x) near the origin";
    f.singular_radii = {0.0};
    f.support_lo = 0;
    f.support_hi = 1.5;
    return f;
}

TestFamily parse_family(std::string_view descriptor) {
    const std::string d(descriptor);
    const auto lp = d.find('('), rp = d.rfind(')');
    if (lp == std::string::npos || rp == std::string::npos || rp < lp)
        throw ConfigError("family descriptor must look like name(k=v,...): " + d);
    const std::string name = d.substr(0, lp);
    std::map<std::string, double> kv;
    std::stringstream ss(d.substr(lp + 1, rp - lp - 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("family parameter without '=': " + item);
        try {
            kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw ConfigError("family parameter not numeric: " + item);
        }
    }
    auto need = [&](const char* k) {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError(name + ": missing parameter " + k);
        return it->second;
    };
    try {
        if (name == "f_alpha") return make_f_alpha(need("alpha"), need("p"));
        if (name == "f_alpha_delta") return make_f_alpha_delta(need("alpha"), need("delta"));
        if (name == "Phi_alpha") return make_Phi_alpha(need("alpha"));
        if (name == "f_j_lambda") return make_f_j_lambda(static_cast<int>(need("j")), need("lambda"));
        if (name == "f_alpha_sigma") return make_f_alpha_sigma(need("alpha"), need("sigma"));
        if (name == "psi_cutoff") return make_psi_cutoff();
        if (name == "blowup") return make_blowup_witness(need("s"), need("p"), static_cast<int>(need("d")));
    } catch (const InvalidInput& e) {
        throw ConfigError(std::string("family rejected: ") + e.what());
    }
    throw ConfigError("unknown family: " + name);
}

bool f_alpha_sigma_member(double alpha, double sigma, double q) { return in_U_t(alpha, sigma, q); }

Grid1D safe_grid(const TestFamily& f, double h, double T) {
    Grid1D g = Grid1D::uniform_offset(h, T);
    for (double r : f.singular_radii)
        for (std::size_t i = g.first_nonnegative(); i < g.size(); ++i)
            if (g[i] == r) throw InvalidInput("safe_grid: spacing places a node on a singular radius");
    return g;
}

}  // namespace radialfs
