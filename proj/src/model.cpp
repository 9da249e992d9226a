#include "metapop/model.hpp"

#include <cmath>
#include <limits>

namespace metapop {

namespace {

std::vector<double> default_check_grid(const DispersalMatrix& disp) {
    double smax = 1.0;
    for (int i = 0; i < disp.size(); ++i)
        for (int j = 0; j < disp.size(); ++j) smax = std::max(smax, disp.at(i, j).param_s());
    std::vector<double> grid;
    for (int k = 0; k <= 200; ++k) grid.push_back(10.0 * smax * k / 200.0);
    return grid;
}

void update_stats(Trajectory& traj, const Vector& x) {
    traj.min_eta1 = std::min(traj.min_eta1, x.minCoeff());
    traj.min_eta2_l1 = std::min(traj.min_eta2_l1, x.lpNorm<1>());
    const double sup = x.lpNorm<Eigen::Infinity>();
    traj.min_eta2_sup = std::min(traj.min_eta2_sup, sup);
    traj.max_eta2_sup = std::max(traj.max_eta2_sup, sup);
}

}  // namespace

MetapopModel::MetapopModel(std::vector<GrowthMap> maps, DispersalMatrix dispersal)
    : n_(static_cast<int>(maps.size())), maps_(std::move(maps)), dispersal_(std::move(dispersal)) {
    if (n_ < 1) throw ConfigError("model needs at least one region");
    if (dispersal_.size() != n_)
        throw ConfigError("dispersal matrix dimension does not match region count");
    const auto rep = dispersal_.check_substochastic(default_check_grid(dispersal_));
    if (!rep.holds)
        throw ConfigError("condition (D) violated: column " + std::to_string(rep.worst_column + 1) +
                          " sums to " + std::to_string(rep.worst_column_sum));
    bounds_.resize(n_);
    for (int i = 0; i < n_; ++i) bounds_[i] = maps_[i].upper_bound();
}

Matrix MetapopModel::assemble_A(const Vector& x) const {
    if (x.size() != n_) throw DomainError("state dimension mismatch");
    Matrix A(n_, n_);
    for (int j = 0; j < n_; ++j) {
        const double gj = maps_[j].eval_g(x[j]);
        for (int i = 0; i < n_; ++i) A(i, j) = dispersal_.at(i, j).eval(x[j]) * gj;
    }
    return A;
}

Matrix MetapopModel::jacobian_at_origin() const {
    return assemble_A(Vector::Zero(n_));
}

Vector MetapopModel::step(const Vector& x) const {
    if (x.size() != n_) throw DomainError("state dimension mismatch");
    Vector y = Vector::Zero(n_);
    for (int j = 0; j < n_; ++j) {
        const double fj = maps_[j].eval_f(x[j]);
        for (int i = 0; i < n_; ++i) y[i] += dispersal_.at(i, j).eval(x[j]) * fj;
    }
    return y;
}

Trajectory MetapopModel::simulate(const Vector& x0, long T, long burn_in, int window) const {
    if (x0.size() != n_) throw DomainError("state dimension mismatch");
    if (x0.minCoeff() < 0.0) throw DomainError("initial state must be componentwise >= 0");
    if (!(T > burn_in && burn_in >= 0)) throw ConfigError("need T > burn_in >= 0");

    Trajectory traj;
    traj.T = T;
    traj.burn_in = burn_in;
    traj.x0 = x0;

    Vector x = x0;
    for (long t = 1; t <= T; ++t) {
        x = step(x);
        if (!x.allFinite())
            throw NumericalError("state became non-finite at step " + std::to_string(t));
        if (t > burn_in) {
            update_stats(traj, x);
            traj.tail.push_back(x);
            if (static_cast<int>(traj.tail.size()) > window) traj.tail.pop_front();
        }
    }
    return traj;
}

std::vector<Trajectory> simulate_isolated(const std::vector<GrowthMap>& maps, const Vector& x0,
                                          long T, long burn_in, int window) {
    if (x0.size() != static_cast<long>(maps.size()))
        throw DomainError("state dimension mismatch");
    if (!(T > burn_in && burn_in >= 0)) throw ConfigError("need T > burn_in >= 0");

    std::vector<Trajectory> out;
    for (size_t i = 0; i < maps.size(); ++i) {
        Trajectory traj;
        traj.T = T;
        traj.burn_in = burn_in;
        traj.x0 = Vector::Constant(1, x0[static_cast<long>(i)]);
        Vector x = traj.x0;
        for (long t = 1; t <= T; ++t) {
            x[0] = maps[i].eval_f(x[0]);
            if (!std::isfinite(x[0]))
                throw NumericalError("isolated state became non-finite at step " + std::to_string(t));
            if (t > burn_in) {
                update_stats(traj, x);
                traj.tail.push_back(x);
                if (static_cast<int>(traj.tail.size()) > window) traj.tail.pop_front();
            }
        }
        out.push_back(std::move(traj));
    }
    return out;
}

}  // namespace metapop
