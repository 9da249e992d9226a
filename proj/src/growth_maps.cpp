#include "metapop/growth_maps.hpp"

#include <algorithm>
#include <limits>

namespace metapop {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
}
}  // namespace

std::string to_string(MapKind kind) {
    switch (kind) {
        case MapKind::Ricker: return "Ricker";
        case MapKind::Hassell: return "Hassell";
        case MapKind::GeneralisedBevertonHolt: return "GeneralisedBevertonHolt";
        case MapKind::Logistic: return "Logistic";
        case MapKind::GammaGauss: return "GammaGauss";
    }
    return "?";
}

MapKind map_kind_from_string(const std::string& name) {
    if (name == "Ricker") return MapKind::Ricker;
    if (name == "Hassell") return MapKind::Hassell;
    if (name == "GeneralisedBevertonHolt") return MapKind::GeneralisedBevertonHolt;
    if (name == "Logistic") return MapKind::Logistic;
    if (name == "GammaGauss") return MapKind::GammaGauss;
    throw ConfigError("unknown growth map kind: " + name);
}

GrowthMap GrowthMap::ricker(double a, double b) {
    require(a > 0 && b > 0, "Ricker requires a > 0, b > 0");
    return {MapKind::Ricker, a, b, 0.0};
}

GrowthMap GrowthMap::hassell(double a, double b, double c) {
    require(a > 0 && b > 0 && c >= 1, "Hassell requires a > 0, b > 0, c >= 1");
    return {MapKind::Hassell, a, b, c};
}

GrowthMap GrowthMap::generalised_beverton_holt(double a, double b, double c) {
    require(a > 0 && b > 0 && c >= 1, "GeneralisedBevertonHolt requires a > 0, b > 0, c >= 1");
    return {MapKind::GeneralisedBevertonHolt, a, b, c};
}

GrowthMap GrowthMap::logistic(double a) {
    require(a >= 0 && a <= 4, "Logistic requires a in [0,4]");
    return {MapKind::Logistic, a, 0.0, 0.0};
}

GrowthMap GrowthMap::gamma_gauss(double gamma) {
    require(gamma > 0, "GammaGauss requires gamma > 0");
    return {MapKind::GammaGauss, gamma, 0.0, 0.0};
}

double GrowthMap::domain_max() const {
    return kind_ == MapKind::Logistic ? 1.0 : kInf;
}

void GrowthMap::check_domain(double x) const {
    if (!(x >= 0)) throw DomainError("density must be >= 0, got " + std::to_string(x));
    if (kind_ == MapKind::Logistic && x > 1.0)
        throw DomainError("Logistic map is only defined on [0,1], got x = " + std::to_string(x));
}

double GrowthMap::eval_g(double x) const {
    check_domain(x);
    switch (kind_) {
        case MapKind::Ricker: return a_ * std::exp(-b_ * x);
        case MapKind::Hassell: return a_ / std::pow(1.0 + b_ * x, c_);
        case MapKind::GeneralisedBevertonHolt: return a_ / (1.0 + std::pow(x / b_, c_));
        case MapKind::Logistic: return a_ * (1.0 - x);
        case MapKind::GammaGauss: return a_ * std::exp(-(x - 1.0) * (x - 1.0));
    }
    return 0.0;
}

double GrowthMap::eval_dg(double x) const {
    check_domain(x);
    switch (kind_) {
        case MapKind::Ricker: return -a_ * b_ * std::exp(-b_ * x);
        case MapKind::Hassell: return -a_ * b_ * c_ / std::pow(1.0 + b_ * x, c_ + 1.0);
        case MapKind::GeneralisedBevertonHolt: {
            if (x == 0.0) return c_ > 1.0 ? 0.0 : -a_ / b_;
            const double u = std::pow(x / b_, c_);
            const double denom = 1.0 + u;
            return -a_ * c_ * u / (x * denom * denom);
        }
        case MapKind::Logistic: return -a_;
        case MapKind::GammaGauss: return -2.0 * (x - 1.0) * a_ * std::exp(-(x - 1.0) * (x - 1.0));
    }
    return 0.0;
}

double GrowthMap::eval_f(double x) const {
    return eval_g(x) * x;
}

double GrowthMap::derivative_f(double x) const {
    return eval_dg(x) * x + eval_g(x);
}

double GrowthMap::upper_bound() const {
    switch (kind_) {
        case MapKind::Ricker:
            // argmax at x = 1/b
            return a_ / (b_ * std::exp(1.0));
        case MapKind::Hassell:
            if (c_ == 1.0) return a_ / b_;  // monotone, supremum at infinity
            // argmax at x = 1/(b(c-1))
            return a_ / (b_ * (c_ - 1.0)) * std::pow((c_ - 1.0) / c_, c_);
        case MapKind::GeneralisedBevertonHolt:
            if (c_ == 1.0) return a_ * b_;  // monotone, supremum at infinity
            // argmax where (x/b)^c = 1/(c-1)
            return a_ * b_ * std::pow(c_ - 1.0, 1.0 - 1.0 / c_) / c_;
        case MapKind::Logistic:
            return a_ / 4.0;
        case MapKind::GammaGauss: {
            const double m = (1.0 + std::sqrt(3.0)) / 2.0;
            return a_ * m * std::exp(-(m - 1.0) * (m - 1.0));
        }
    }
    return 0.0;
}

std::vector<MapFixedPoint> GrowthMap::isolated_fixed_points() const {
    std::vector<MapFixedPoint> out;
    const auto classify_by_slope = [this](double x) {
        const double s = std::abs(derivative_f(x));
        if (std::abs(s - 1.0) < 1e-12) return FixedPointStability::Marginal;
        return s < 1.0 ? FixedPointStability::LAS : FixedPointStability::Unstable;
    };

    // The origin: stability from f'(0) = g(0).
    const double g0 = g_at_zero();
    if (std::abs(g0 - 1.0) < 1e-12)
        out.push_back({0.0, FixedPointStability::Marginal});
    else if (g0 < 1.0)
        out.push_back({0.0, g_nonincreasing() ? FixedPointStability::GAS : FixedPointStability::LAS});
    else
        out.push_back({0.0, FixedPointStability::Unstable});

    switch (kind_) {
        case MapKind::Ricker:
            if (a_ > 1.0) {
                const double x = std::log(a_) / b_;
                auto st = FixedPointStability::Marginal;
                if (a_ < std::exp(1.0))
                    st = FixedPointStability::LAS;
                else if (a_ > std::exp(1.0))
                    st = FixedPointStability::Unstable;
                out.push_back({x, st});
            }
            break;
        case MapKind::Hassell:
            if (c_ == 1.0) {
                if (a_ > 1.0) out.push_back({(a_ - 1.0) / b_, FixedPointStability::GAS});
            } else if (a_ > 1.0) {
                // g(x) = 1  <=>  (1+bx)^c = a
                const double x = (std::pow(a_, 1.0 / c_) - 1.0) / b_;
                out.push_back({x, classify_by_slope(x)});
            }
            break;
        case MapKind::GeneralisedBevertonHolt:
            if (a_ > 1.0) {
                const double x = b_ * std::pow(a_ - 1.0, 1.0 / c_);
                out.push_back({x, c_ == 1.0 ? FixedPointStability::GAS : classify_by_slope(x)});
            }
            break;
        case MapKind::Logistic:
            if (a_ > 1.0) {
                const double x = 1.0 - 1.0 / a_;
                out.push_back({x, classify_by_slope(x)});
            }
            break;
        case MapKind::GammaGauss:
            // g(x) = 1  <=>  (x-1)^2 = ln(gamma)
            if (a_ > 1.0) {
                const double d = std::sqrt(std::log(a_));
                if (1.0 - d > 0.0) out.push_back({1.0 - d, classify_by_slope(1.0 - d)});
                out.push_back({1.0 + d, classify_by_slope(1.0 + d)});
            }
            break;
    }
    return out;
}

RegionClass GrowthMap::classify_region() const {
    // Sink needs the closed-form certificate g(x) < 1 for all x; for the
    // monotone-g kinds this is g(0) = a < 1, for GammaGauss it is the
    // maximum g(1) = gamma < 1.
    if (kind_ == MapKind::GammaGauss) {
        if (a_ < 1.0) return RegionClass::Sink;
        if (g_at_zero() > 1.0) return RegionClass::Source;
        return RegionClass::Indeterminate;
    }
    if (a_ < 1.0) return RegionClass::Sink;
    if (a_ > 1.0) return RegionClass::Source;
    return RegionClass::Indeterminate;
}

MembershipReport check_class_membership(const GrowthMap& map, const std::vector<double>& grid) {
    MembershipReport rep;
    const double m = map.upper_bound();
    const double h = 1e-4;

    bool in_convex_prefix = false;
    bool convex_prefix_done = false;
    double prev_f = 0.0;
    bool first = true;

    for (double x : grid) {
        if (x > map.domain_max()) continue;
        const double f = map.eval_f(x);
        const double g = map.eval_g(x);
        if (x > 0.0 && !(f > 0.0)) {
            rep.member = false;
            rep.violations.push_back("f(x) <= 0 at x = " + std::to_string(x));
        }
        if (!(g > 0.0)) {
            rep.member = false;
            rep.violations.push_back("g(x) <= 0 at x = " + std::to_string(x));
        }
        if (f > m + 1e-12 * std::max(1.0, m)) {
            rep.member = false;
            rep.violations.push_back("f(x) > m at x = " + std::to_string(x));
        }
        if (!first && f < prev_f) rep.f_monotone_increasing_on_grid = false;
        prev_f = f;
        first = false;

        // Sign of f'' by second-order central differences.
        if (x - h >= 0.0 && x + h <= map.domain_max()) {
            const double fxx = (map.eval_f(x + h) - 2.0 * f + map.eval_f(x - h)) / (h * h);
            if (!convex_prefix_done) {
                if (fxx > 0.0) {
                    in_convex_prefix = true;
                    rep.convex_prefix_end = x;
                } else if (in_convex_prefix) {
                    convex_prefix_done = true;
                }
            }
        }
    }
    return rep;
}

}  // namespace metapop
