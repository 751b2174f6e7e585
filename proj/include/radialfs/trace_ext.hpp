#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "radialfs/covering.hpp"
#include "radialfs/profile.hpp"

namespace radialfs {

using FieldFn = std::function<double(std::span<const double>)>;

// A radial function on R^d, backed by a profile, an evaluator, or tensor samples.
class RadialGridField {
  public:
    enum class Backing { Profile, Evaluator, Samples };

    static RadialGridField from_profile(RadialProfile g, int d, Interp interp = Interp::Linear);
    // axis: even grid on which trace() restricts the evaluator
    static RadialGridField from_evaluator(FieldFn f, int d, Grid1D axis, std::string provenance);
    // values on axis^d in row-major order (last coordinate fastest); axis even and uniform
    static RadialGridField from_samples(Grid1D axis, int d, std::vector<double> values, std::string provenance);

    int dim() const { return d_; }
    Backing backing() const { return backing_; }
    const std::string& provenance() const { return provenance_; }
    const Grid1D& axis() const { return axis_; }
    const std::optional<RadialProfile>& profile() const { return profile_; }

    // point evaluation; sample-backed fields only answer at tensor nodes
    double operator()(std::span<const double> x) const;
    // samples on axis^d (axis even and uniform)
    GridFunction tensor_samples(const Grid1D& axis) const;
    GridFunction tensor_samples() const { return tensor_samples(axis_); }

  private:
    RadialGridField() = default;
    Backing backing_ = Backing::Profile;
    int d_ = 2;
    std::string provenance_;
    Grid1D axis_{{-1.0, 1.0}, GridKind::UniformDyadic, true};
    std::optional<RadialProfile> profile_;
    Interp interp_ = Interp::Linear;
    FieldFn fn_;
    std::vector<double> samples_;
};

struct RadialityReport {
    double max_defect = 0;  // max |f(Qx) - f(x)| (evaluators) or spread over equal-radius nodes (samples)
    double scale = 0;       // max |f| seen
    std::size_t comparisons = 0;
    double relative() const { return scale > 0 ? max_defect / scale : 0.0; }
    bool radial(double tol = 1e-8) const { return relative() <= tol; }
};

RadialityReport radiality(const RadialGridField& f, std::uint64_t seed = 0x7261646cULL, int trials = 200);

// f_0(t) = f(t, 0, ..., 0); throws SymmetryViolation for non-radial input
RadialProfile trace(const RadialGridField& f, double tol = 1e-8);
// f(x) = g(|x|)
RadialGridField extend(const RadialProfile& g, int d, Interp interp = Interp::Linear);

// sum_{n <= m} sup |g^(n)| by finite differences
double cm_norm(const RadialProfile& g, int m);
// sum_{|alpha| <= m} sup |D^alpha f| on tensor samples over axis^d
double cm_norm(const RadialGridField& f, int m, const Grid1D& axis);
double cm_norm(const RadialGridField& f, int m);

// one-sided slope g'(0+) from the nonnegative half; nonzero means ext g has a cone point
struct OriginSmoothness {
    double odd_slope = 0;
    bool smooth = true;
};
OriginSmoothness origin_smoothness(const RadialProfile& g, double tol = 1e-3);

struct SupportAnnulus {
    bool empty = true;
    double a = 0, b = 0;
};
// radii of the extreme nodes with |g| > threshold * max|g|
SupportAnnulus support_annulus(const RadialProfile& g, double threshold = 1e-12);
SupportAnnulus support_annulus(const RadialGridField& f, const Grid1D& axis, double threshold = 1e-12);

}  // namespace radialfs
