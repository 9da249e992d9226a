#pragma once

#include <deque>
#include <vector>

#include "metapop/dispersal.hpp"
#include "metapop/growth_maps.hpp"
#include "metapop/types.hpp"

namespace metapop {

struct SimConfig {
    long T = 100000;
    long burn_in = 10000;
    int window = 64;        // retained tail length
    double tol = 1e-6;      // relative recurrence tolerance
};

// Post-burn-in tail of a simulated orbit plus running persistence
// statistics: eta1 = min_i x_i, eta2 under both the 1- and sup-norms.
struct Trajectory {
    std::deque<Vector> tail;
    long T = 0;
    long burn_in = 0;
    Vector x0;
    double min_eta1 = std::numeric_limits<double>::infinity();
    double min_eta2_l1 = std::numeric_limits<double>::infinity();
    double min_eta2_sup = std::numeric_limits<double>::infinity();
    double max_eta2_sup = 0.0;
};

// The coupled system F(x) = A(x) x with A(x) = D(x) G(x).
class MetapopModel {
  public:
    MetapopModel(std::vector<GrowthMap> maps, DispersalMatrix dispersal);

    int size() const { return n_; }
    const GrowthMap& map(int i) const { return maps_[i]; }
    const std::vector<GrowthMap>& maps() const { return maps_; }
    const DispersalMatrix& dispersal() const { return dispersal_; }

    // Closed-form bounds m_i and their sum M (point dissipativity).
    const Vector& map_bounds() const { return bounds_; }
    double total_bound() const { return bounds_.sum(); }

    // A(x)_ij = d_ij(x_j) g_j(x_j), entrywise strictly positive.
    Matrix assemble_A(const Vector& x) const;

    // F'(0) = A(0), using f'(0) = g(0).
    Matrix jacobian_at_origin() const;

    // One step F(x) = A(x) x, evaluated as the componentwise dispersal sum.
    Vector step(const Vector& x) const;

    Trajectory simulate(const Vector& x0, long T, long burn_in, int window = 1024) const;

  private:
    int n_;
    std::vector<GrowthMap> maps_;
    DispersalMatrix dispersal_;
    Vector bounds_;
};

// Each region iterated in isolation: x_i(t+1) = f_i(x_i(t)).
std::vector<Trajectory> simulate_isolated(const std::vector<GrowthMap>& maps, const Vector& x0,
                                          long T, long burn_in, int window = 1024);

}  // namespace metapop
