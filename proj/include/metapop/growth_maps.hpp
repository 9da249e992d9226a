#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "metapop/types.hpp"

namespace metapop {

enum class MapKind { Ricker, Hassell, GeneralisedBevertonHolt, Logistic, GammaGauss };

std::string to_string(MapKind kind);
MapKind map_kind_from_string(const std::string& name);

enum class RegionClass { Source, Sink, Indeterminate };
enum class FixedPointStability { LAS, GAS, Unstable, Marginal };

struct MapFixedPoint {
    double x;
    FixedPointStability stability;
};

// A single-region growth map f(x) = g(x) x with closed-form per-capita
// function, derivative, supremum bound and isolated fixed points.
// Immutable after construction; all evaluations are pure.
class GrowthMap {
  public:
    static GrowthMap ricker(double a, double b);
    static GrowthMap hassell(double a, double b, double c);
    static GrowthMap generalised_beverton_holt(double a, double b, double c);
    static GrowthMap logistic(double a);
    static GrowthMap gamma_gauss(double gamma);

    MapKind kind() const { return kind_; }
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    double param_c() const { return c_; }

    // f(x) = g(x) x.  Logistic maps are only defined on [0,1].
    double eval_f(double x) const;

    // Per-capita rate from its own closed form, so x = 0 is regular.
    double eval_g(double x) const;

    // g'(x), closed form.
    double eval_dg(double x) const;

    // f'(x) = g'(x) x + g(x).
    double derivative_f(double x) const;

    // Least closed-form m with f(x) <= m for all admissible x.
    double upper_bound() const;

    // The intrinsic rate g(0).
    double g_at_zero() const { return eval_g(0.0); }

    // All isolated fixed points in closed form, origin included.
    std::vector<MapFixedPoint> isolated_fixed_points() const;

    RegionClass classify_region() const;

    // Whether g is nonincreasing on all of R+ (known per catalog kind).
    bool g_nonincreasing() const { return kind_ != MapKind::GammaGauss; }

    // Largest admissible argument (finite only for Logistic).
    double domain_max() const;

  private:
    GrowthMap(MapKind kind, double a, double b, double c) : kind_(kind), a_(a), b_(b), c_(c) {}
    void check_domain(double x) const;

    MapKind kind_;
    double a_;  // gamma for GammaGauss
    double b_;
    double c_;
};

// Sampled verification of the class-membership conditions: positivity of
// f and g away from the origin, the supremum bound, and the sign pattern
// of a finite-difference f'' so convexity regions are visible.
struct MembershipReport {
    bool member = true;
    std::vector<std::string> violations;
    // Right endpoint of the initial interval where f'' > 0, if the map is
    // convex near the origin (NaN otherwise).
    double convex_prefix_end = std::numeric_limits<double>::quiet_NaN();
    bool f_monotone_increasing_on_grid = true;
};

MembershipReport check_class_membership(const GrowthMap& map, const std::vector<double>& grid);

}  // namespace metapop
