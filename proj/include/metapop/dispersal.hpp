#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "metapop/types.hpp"

namespace metapop {

enum class DispersalKind { Constant, Richards };

std::string to_string(DispersalKind kind);
DispersalKind dispersal_kind_from_string(const std::string& name);

// A dispersal proportion d : R+ -> (0,1).  Richards is the generalised
// logistic d(x) = r / (1 + exp(-k (x - s))), nondecreasing for k >= 0.
class DispersalFunction {
  public:
    static DispersalFunction constant(double d);
    static DispersalFunction richards(double r, double k, double s);

    DispersalKind kind() const { return kind_; }
    double param_r() const { return r_; }
    double param_k() const { return k_; }
    double param_s() const { return s_; }

    double eval(double x) const;

    // Closed-form value at the origin and supremum/limit at infinity.
    double at_zero() const;
    double limit() const { return r_; }

    // Nonincreasing in x (certifies the Prop.-2 style hypotheses).
    bool nonincreasing() const { return kind_ == DispersalKind::Constant || k_ == 0.0; }

  private:
    DispersalFunction(DispersalKind kind, double r, double k, double s)
        : kind_(kind), r_(r), k_(k), s_(s) {}

    DispersalKind kind_;
    double r_;  // the constant value for Constant, saturation for Richards
    double k_;
    double s_;
};

struct SubstochasticReport {
    bool holds = true;
    double worst_column_sum = 0.0;
    int worst_column = -1;   // 0-based origin column
    double witness_x = 0.0;  // density at which the worst sum is attained
};

// n x n grid of dispersal functions; entry (i,j) is the proportion moving
// from region j to region i, the diagonal the proportion remaining.
class DispersalMatrix {
  public:
    DispersalMatrix(int n, std::vector<DispersalFunction> entries);

    int size() const { return n_; }
    const DispersalFunction& at(int i, int j) const { return entries_[i * n_ + j]; }

    // D(x) with D_ij = d_ij(x_j).
    Matrix eval(const Vector& x) const;
    Matrix eval_at_zero() const;

    // Condition (D): every origin column's proportions sum to < 1 for all
    // x >= 0.  Catalog kinds are certified exactly through their suprema;
    // the grid is a sampling fallback and always also checked.
    SubstochasticReport check_substochastic(const std::vector<double>& grid) const;

  private:
    int n_;
    std::vector<DispersalFunction> entries_;  // row-major
};

}  // namespace metapop
