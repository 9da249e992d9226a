#include "metapop/dispersal.hpp"

#include <algorithm>
#include <limits>

namespace metapop {

std::string to_string(DispersalKind kind) {
    return kind == DispersalKind::Constant ? "Constant" : "Richards";
}

DispersalKind dispersal_kind_from_string(const std::string& name) {
    if (name == "Constant") return DispersalKind::Constant;
    if (name == "Richards") return DispersalKind::Richards;
    throw ConfigError("unknown dispersal kind: " + name);
}

DispersalFunction DispersalFunction::constant(double d) {
    if (!(d > 0.0 && d < 1.0)) throw ConfigError("Constant dispersal requires d in (0,1)");
    return {DispersalKind::Constant, d, 0.0, 0.0};
}

DispersalFunction DispersalFunction::richards(double r, double k, double s) {
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("Richards dispersal requires r in (0,1)");
    if (!(k >= 0.0 && s >= 0.0)) throw ConfigError("Richards dispersal requires k >= 0, s >= 0");
    return {DispersalKind::Richards, r, k, s};
}

namespace {
// r * sigma(t) in the branch that never exponentiates a positive argument.
// Clamped away from 0 so the strict-positivity invariant survives
// underflow at extreme negative arguments.
double scaled_logistic(double r, double t) {
    if (t >= 0.0) return r / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return std::max(r * e / (1.0 + e), std::numeric_limits<double>::min());
}
}  // namespace

double DispersalFunction::eval(double x) const {
    if (!(x >= 0.0)) throw DomainError("density must be >= 0, got " + std::to_string(x));
    if (kind_ == DispersalKind::Constant) return r_;
    return scaled_logistic(r_, k_ * (x - s_));
}

double DispersalFunction::at_zero() const {
    if (kind_ == DispersalKind::Constant) return r_;
    return scaled_logistic(r_, -k_ * s_);
}

DispersalMatrix::DispersalMatrix(int n, std::vector<DispersalFunction> entries)
    : n_(n), entries_(std::move(entries)) {
    if (n < 1) throw ConfigError("dispersal matrix needs n >= 1");
    if (static_cast<int>(entries_.size()) != n * n)
        throw ConfigError("dispersal matrix entry count does not match n*n");
}

Matrix DispersalMatrix::eval(const Vector& x) const {
    if (x.size() != n_) throw DomainError("state dimension mismatch");
    Matrix D(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) D(i, j) = at(i, j).eval(x[j]);
    return D;
}

Matrix DispersalMatrix::eval_at_zero() const {
    Matrix D(n_, n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) D(i, j) = at(i, j).at_zero();
    return D;
}

SubstochasticReport DispersalMatrix::check_substochastic(const std::vector<double>& grid) const {
    SubstochasticReport rep;
    // Exact criterion: limits are suprema for both catalog kinds, so the
    // column sum of limits bounds the column sum at every density.
    for (int j = 0; j < n_; ++j) {
        double sum = 0.0;
        for (int i = 0; i < n_; ++i) sum += at(i, j).limit();
        if (sum > rep.worst_column_sum) {
            rep.worst_column_sum = sum;
            rep.worst_column = j;
            rep.witness_x = std::numeric_limits<double>::infinity();
        }
    }
    // Sampling fallback, kept as a cross-check.
    for (double x : grid) {
        for (int j = 0; j < n_; ++j) {
            double sum = 0.0;
            for (int i = 0; i < n_; ++i) sum += at(i, j).eval(x);
            if (sum > rep.worst_column_sum) {
                rep.worst_column_sum = sum;
                rep.worst_column = j;
                rep.witness_x = x;
            }
        }
    }
    rep.holds = rep.worst_column_sum < 1.0;  // strict
    return rep;
}

}  // namespace metapop
