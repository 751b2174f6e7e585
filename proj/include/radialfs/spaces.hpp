#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace radialfs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Scale { B, F };

struct SpaceParams {
    double s = 0;
    double p = 2;
    double q = 2;
    int d = 1;
    Scale scale = Scale::B;

    void validate() const;
    std::string describe() const;
};

// 1/inf = 0
double inv(double x);

enum class Tri { True, False, OutOfHypothesis };
const char* to_string(Tri t);

double sigma_p(double p, int d);
double sigma_pq(double p, double q, int d);

Tri in_U_tri(const SpaceParams& a);
Tri embeds_in_Linfty_tri(const SpaceParams& a);
Tri trace_lands_in_Sprime_tri(const SpaceParams& a);

// boolean front ends; OutOfHypothesis is thrown, never coerced to false
bool in_U(const SpaceParams& a);
bool embeds_in_Linfty(const SpaceParams& a);
bool trace_lands_in_Sprime(const SpaceParams& a);
bool weighted_Lp_in_Sprime(double p, int d);
bool in_U_t(double alpha, double sigma, double t);

struct ParamRegion {
    std::string name;
    std::function<std::string(const SpaceParams&)> classifier;
};

// "U", "Linfty", "trace-Sprime", "fig2", "fig3"
ParamRegion make_region(const std::string& name);
std::vector<std::string> region_names();

struct RasterCell {
    double inv_p;
    double s;
    std::string label;
};

// res x res raster over [a,b] (1/p) times [c,e] (s), cell centers inclusive of the corners
std::vector<RasterCell> classification_map(const ParamRegion& region, double a, double b, double c, double e,
                                           int res, int d = 2, double q = 2, Scale scale = Scale::B);
std::string raster_csv(const std::vector<RasterCell>& cells);

}  // namespace radialfs
