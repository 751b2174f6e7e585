#include "radialfs/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "experiments_impl.hpp"
#include "radialfs/errors.hpp"

namespace radialfs {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string short_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace

Assertion assert_close(std::string name, double measured, double target, double tol, std::string provenance) {
    Assertion a{std::move(name), measured, "|x - " + short_num(target) + "| <= " + short_num(tol),
                std::move(provenance), std::abs(measured - target) <= tol};
    return a;
}

Assertion assert_at_most(std::string name, double measured, double bound, std::string provenance) {
    return {std::move(name), measured, "x <= " + short_num(bound), std::move(provenance), measured <= bound};
}

Assertion assert_at_least(std::string name, double measured, double bound, std::string provenance) {
    return {std::move(name), measured, "x >= " + short_num(bound), std::move(provenance), measured >= bound};
}

Assertion assert_true(std::string name, bool ok, std::string provenance) {
    return {std::move(name), ok ? 1.0 : 0.0, "x == 1", std::move(provenance), ok};
}

bool ExperimentResult::all_pass() const {
    for (auto& a : assertions)
        if (!a.pass) return false;
    return true;
}

std::string ExperimentResult::summary() const {
    std::ostringstream out;
    out << "experiment: " << experiment << "\n";
    std::size_t passed = 0;
    for (auto& a : assertions) {
        passed += a.pass;
        out << (a.pass ? "PASS " : "FAIL ") << a.name << "  measured=" << fmt(a.measured) << "  threshold: "
            << a.threshold << "  [" << a.provenance << "]\n";
    }
    for (auto& n : notes) out << "note: " << n << "\n";
    out << "result: " << (all_pass() ? "PASS" : "FAIL") << " (" << passed << "/" << assertions.size()
        << " assertions)\n";
    out << "\n# config\n" << config;
    return out.str();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f, const RunOptions& opt) {
    unsigned workers = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    if (!opt.parallel || workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::size_t error_index = n;
    std::mutex m;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    // report the lowest failing index, as the serial loop would
                    if (i < error_index) {
                        error_index = i;
                        first_error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

namespace {

using Runner = void (*)(detail::Ctx&);

struct Entry {
    ExperimentInfo info;
    Runner run;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> reg = {
        {{"scaling-f-j-lambda", "f_{j,lambda} Besov norm scaling 2^{j(s-d/p)} lambda^{(d-1)/p} via the weighted LP norm",
          false,
          R"(experiment = scaling-f-j-lambda

[params]
s = 1
p = 2
q = 2
d = 2
scale = B

[sweep]
j = 3..8
lambda_at_j = 16
lambda = 4,8,16,32,64
j_at_lambda = 5

[grid]
points_per_scale = 32   # nodes per 2^-j
margin = 2
)"},
         detail::run_scaling_f_j_lambda},
        {{"lp-scaling", "f_{j,lambda} weighted L_p norm scaling 2^{-jd/p} lambda^{(d-1)/p}", false,
          R"(experiment = lp-scaling

[params]
p = 2
d = 2

[sweep]
j = 3..8
lambda_at_j = 16
lambda = 4,8,16,32,64
j_at_lambda = 5

[grid]
points_per_scale = 32
margin = 2
)"},
         detail::run_lp_scaling},
        {{"decay-infinity", "decay at infinity: |x|^{(d-1)/p}|f(x)| against the norm, lower-bound witnesses at 2^r",
          true,
          R"(experiment = decay-infinity
seed = 1

[params]
q = 1
scale = B       # s defaults to 1/p

[sweep]
d = 2,3
p = 1,2
r = 2..8

[witness]
surrogate = lp
h = 1/64

[upper]
count = 4       # random bump trains checked against the upper bound
rmax = 32
)"},
         detail::run_decay_infinity},
        {{"strauss", "Strauss radial lemma: amplitude decay exponent (d-1)/2 of unit-norm bump trains", false,
          R"(experiment = strauss

[sweep]
d = 3
p = 2
r = 2..8

[grid]
h = 1/64
)"},
         detail::run_strauss},
        {{"blowup-origin", "blow-up at the origin: exponent d/p - s of psi |x|^{s-d/p}", false,
          R"(experiment = blowup-origin

[params]
s = 0.75
p = 2
q = 2
d = 2
scale = B

[sweep]
r = 2..10

[witness]
surrogate = lp
)"},
         detail::run_blowup_origin},
        {{"log-borderline", "borderline s = d/p: (-log|x|)^{-1/q'} |f(x)| along |x| = 2^-r", false,
          R"(experiment = log-borderline

[params]
p = 2
q = inf
d = 2
scale = B        # s = d/p

[sweep]
r = 4..12

[witness]
families = f_alpha_sigma(alpha=1,sigma=0)
controls = psi_cutoff()
norms = false
)"},
         detail::run_log_borderline},
        {{"bv-decay", "radial BV decay r^{d-1}|g(r)| <= int_r^inf t^{d-1} d|nu| on random staircases", true,
          R"(experiment = bv-decay
seed = 7

[corpus]
count = 100
dims = 2,3
steps = 10
rmin = 0.1
rmax = 10

[single_step]
radii = 0.5,1,3
amplitudes = 1,-2.5
)"},
         detail::run_bv_decay},
        {{"bv-equivalence", "BV trace equivalence: d-dim over weighted 1-D BV norm on staircases and bumps", true,
          R"(experiment = bv-equivalence
seed = 11

[corpus]
staircases = 12
bumps = 8
mixed = 8
dims = 2,3
dilations = 0.25,4

[check]
convention = isotropic
cross_check_bumps = 3
)"},
         detail::run_bv_equivalence},
        {{"seq-identities", "sequence spaces b and f: p = q identity, homogeneity, monotonicity, quasi-triangle",
          true,
          R"(experiment = seq-identities
seed = 3

[corpus]
count = 100
max_level = 6
max_k = 24
)"},
         detail::run_seq_identities},
        {{"trace-roundtrip", "trace and extension round trips, C^m trace inequality on sampled fields", true,
          R"(experiment = trace-roundtrip
seed = 5

[corpus]
count = 50
dims = 2,3

[grid]
h = 1/64
T = 4

[fields]
axis_h = 1/8
axis_T = 3
m = 0,1,2
)"},
         detail::run_trace_roundtrip},
        {{"support-shift", "support-shift law: 1-D over d-dim norm ratio ~ tau^{-(d-1)/p}", false,
          R"(experiment = support-shift

[params]
s = 1
p = 2
q = 2
d = 2
scale = B

[sweep]
tau = 2,4,8,16

[grid]
h = 1/256
margin = 2

[norms]
surrogate = atomic
)"},
         detail::run_support_shift},
        {{"spherical-mean-wavelet", "wavelet coefficients of the spherical surface measure, scaled l_p sums per level",
          false,
          R"(experiment = spherical-mean-wavelet

[params]
d = 2
p = 1

[wavelet]
N = 6
levels = 6

[quadrature]
rel_tol = 1e-6
)"},
         detail::run_spherical_mean_wavelet},
        {{"sobolev-reduction", "radial reduction c_d ||g'|L_p(|t|^{d-1})|| against Cartesian gradient quadrature",
          false,
          R"(experiment = sobolev-reduction

[sweep]
d = 2,3
p = 1,2

[corpus]
bumps = (0,1,1);(0,0.6,-0.5);(0.9,0.5,1);(0.6,0.3,2);(0,0.8,1),(1.1,0.4,0.7);(0.5,0.35,1),(1.3,0.3,-0.6)

[grid]
n2 = 1024
n3 = 192
profile_h = 1/4096
)"},
         detail::run_sobolev_reduction},
        {{"predicate-tables", "classification predicates against their documented example rows", false,
          R"(experiment = predicate-tables
)"},
         detail::run_predicate_tables},
        {{"classification-map", "rasterize a parameter region over a (1/p, s) rectangle", false,
          R"(experiment = classification-map

[map]
region = fig2
rect = 0,2,-1,3
res = 41
d = 2
q = 2
scale = F       # the boundary point W^1_1 sits on the F line s = 1/p, p <= 1
)"},
         detail::run_classification_map},
        {{"decompose", "atomic decomposition of a test family, coefficients exported as CSV", false,
          R"(experiment = decompose

[input]
family = f_j_lambda(j=3,lambda=3)
grid = uniform:h=0.00048828125,T=4

[atoms]
L = 2
M = -1
s = 1
p = 2
d = 2
tolerance = 1e-4
validate = true
)"},
         detail::run_decompose},
    };
    return reg;
}

}  // namespace

const std::vector<ExperimentInfo>& list_experiments() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

const ExperimentInfo& find_experiment(const std::string& name) {
    for (auto& e : registry())
        if (e.info.name == name) return e.info;
    throw ConfigError("unknown experiment '" + name + "'", 0, "experiment");
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
    const Entry* entry = nullptr;
    for (auto& e : registry())
        if (e.info.name == cfg.experiment()) entry = &e;
    if (!entry) throw ConfigError("unknown experiment '" + cfg.experiment() + "'", cfg.line_of("experiment"), "experiment");
    if (entry->info.randomized) cfg.require_seed();
    ExperimentResult out;
    out.experiment = cfg.experiment();
    out.config = cfg.render();
    detail::Ctx ctx{cfg, opt, out};
    entry->run(ctx);
    return out;
}

void write_artifacts(const ExperimentResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory '" + dir + "': " + ec.message());
    auto put = [&](const std::string& name, const std::string& content) {
        std::ofstream f(fs::path(dir) / name, std::ios::binary);
        if (!f) throw Error("cannot write " + (fs::path(dir) / name).string());
        f << content;
    };
    for (auto& [name, content] : result.artifacts) put(name, content);
    put("summary.txt", result.summary());
}

}  // namespace radialfs
