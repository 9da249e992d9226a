#include "metapop/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace metapop {

std::string to_string(PeriodClass pc) {
    if (pc == PeriodClass::Above8) return ">8";
    return std::to_string(static_cast<int>(pc));
}

StabilityVerdict classify_extinction(const MetapopModel& model) {
    StabilityVerdict v;
    v.spectral = spectral_radius(model.jacobian_at_origin());
    v.rho0 = v.spectral.rho;
    v.r_index_value = r_index(model);

    v.max_g0 = 0.0;
    for (int i = 0; i < model.size(); ++i) v.max_g0 = std::max(v.max_g0, model.map(i).g_at_zero());
    v.extinction_las_prop1 = v.max_g0 < 1.0;
    v.extinction_unstable_r_index = v.r_index_value > 1.0;

    v.indeterminate = std::abs(v.rho0 - 1.0) <= 1e-9;
    if (!v.indeterminate) {
        v.extinction_las_linearization = v.rho0 < 1.0;
        v.extinction_unstable_linearization = v.rho0 > 1.0;
        v.positive_fixed_point_exists_thm3 = v.rho0 > 1.0;
        v.persistence_certified_thm4 = v.rho0 > 1.0;
    }

    // Prop. 2 structural hypotheses: constant diagonal dispersal, all g_i
    // and off-diagonal d_ij nonincreasing, rho0 < 1.
    bool structural = true;
    for (int i = 0; i < model.size() && structural; ++i) {
        if (model.dispersal().at(i, i).kind() != DispersalKind::Constant) structural = false;
        if (!model.map(i).g_nonincreasing()) structural = false;
        for (int j = 0; j < model.size() && structural; ++j)
            if (i != j && !model.dispersal().at(i, j).nonincreasing()) structural = false;
    }
    v.extinction_gas_prop2 = structural && v.extinction_las_linearization;
    return v;
}

std::optional<PersistenceCertificate> persistence_certificate(const MetapopModel& model) {
    const Matrix A0 = model.jacobian_at_origin();
    const auto rep = spectral_radius(A0);
    if (rep.rho <= 1.0 + 1e-9) return std::nullopt;
    const Vector& v = rep.left_vector;
    const Vector lhs = A0.transpose() * v;
    const double r0 = (lhs.array() / v.array()).minCoeff();
    if (r0 <= 1.0) return std::nullopt;
    return PersistenceCertificate{v, r0};
}

namespace {

Matrix fd_jacobian(const MetapopModel& model, const Vector& x) {
    const int n = model.size();
    Matrix J(n, n);
    for (int j = 0; j < n; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
        Vector xp = x, xm = x;
        xp[j] += h;
        xm[j] = std::max(0.0, xm[j] - h);
        const Vector fp = model.step(xp);
        const Vector fm = model.step(xm);
        J.col(j) = (fp - fm) / (xp[j] - xm[j]);
    }
    return J;
}

std::optional<Vector> newton_solve(const MetapopModel& model, Vector x, const NewtonOptions& opts) {
    auto residual = [&](const Vector& y) { return Vector(model.step(y) - y); };
    Vector r = residual(x);
    for (int it = 0; it < opts.max_iterations; ++it) {
        if (r.lpNorm<Eigen::Infinity>() < opts.residual_tol) return x;
        const Matrix J = fd_jacobian(model, x) - Matrix::Identity(model.size(), model.size());
        Eigen::FullPivLU<Matrix> lu(J);
        if (!lu.isInvertible()) return std::nullopt;
        const Vector dx = lu.solve(-r);
        // Damping: halve until the residual decreases and the iterate
        // stays in the nonnegative cone.
        double lambda = 1.0;
        bool accepted = false;
        for (int k = 0; k < 30; ++k, lambda *= 0.5) {
            Vector cand = x + lambda * dx;
            if (cand.minCoeff() < 0.0) continue;
            Vector rc = residual(cand);
            if (rc.lpNorm<Eigen::Infinity>() < r.lpNorm<Eigen::Infinity>()) {
                x = std::move(cand);
                r = std::move(rc);
                accepted = true;
                break;
            }
        }
        if (!accepted) return std::nullopt;
    }
    return r.lpNorm<Eigen::Infinity>() < opts.residual_tol ? std::optional<Vector>(x) : std::nullopt;
}

FixedPointClass classify_point(const MetapopModel& model, const Vector& x) {
    const Matrix J = fd_jacobian(model, x);
    const double rho = Eigen::EigenSolver<Matrix>(J, false).eigenvalues().array().abs().maxCoeff();
    if (std::abs(rho - 1.0) <= 1e-6) return FixedPointClass::Marginal;
    return rho < 1.0 ? FixedPointClass::Stable : FixedPointClass::Unstable;
}

}  // namespace

std::vector<FixedPoint> find_fixed_points(const MetapopModel& model,
                                          const std::vector<Vector>& seeds,
                                          const NewtonOptions& opts) {
    std::vector<FixedPoint> found;
    // The origin is always a fixed point.
    found.push_back({Vector::Zero(model.size()), 0.0, classify_point(model, Vector::Zero(model.size()))});

    for (const Vector& seed : seeds) {
        if (seed.minCoeff() < 0.0) throw DomainError("seeds must be componentwise >= 0");
        auto sol = newton_solve(model, seed, opts);
        if (!sol) continue;
        const Vector& x = *sol;
        bool duplicate = false;
        for (const auto& fp : found)
            if ((fp.point - x).lpNorm<Eigen::Infinity>() < opts.dedupe_tol) duplicate = true;
        if (duplicate) continue;
        const double res = (model.step(x) - x).lpNorm<Eigen::Infinity>();
        found.push_back({x, res, classify_point(model, x)});
    }
    return found;
}

std::vector<Vector> default_fixed_point_seeds(const MetapopModel& model, const Vector& x0,
                                              int grid_per_axis) {
    std::vector<Vector> seeds;
    auto pilot = model.simulate(x0, 2000, 1900, 16);
    for (const auto& s : pilot.tail) seeds.push_back(s);
    // Coarse grid over the absorbing box [0, M]^n.
    const double M = model.total_bound();
    const int n = model.size();
    std::vector<int> idx(n, 1);
    bool done = false;
    while (!done) {
        Vector s(n);
        for (int i = 0; i < n; ++i) s[i] = M * idx[i] / (grid_per_axis + 1.0);
        seeds.push_back(s);
        int i = 0;
        for (; i < n; ++i) {
            if (++idx[i] <= grid_per_axis) break;
            idx[i] = 1;
        }
        done = (i == n);
    }
    return seeds;
}

OrbitSummary detect_period(const MetapopModel& model, const Vector& x0, const SimConfig& cfg) {
    if (!(cfg.T > cfg.burn_in + cfg.window)) throw ConfigError("need T > burn_in + window");
    if (cfg.window < 17) throw ConfigError("window must cover twice the maximal period");
    if (!(cfg.tol > 0)) throw ConfigError("tol must be positive");

    const auto traj = model.simulate(x0, cfg.T, cfg.T - cfg.window, cfg.window);
    const std::vector<Vector> tail(traj.tail.begin(), traj.tail.end());

    OrbitSummary out;
    out.tail_min_eta1 = traj.min_eta1;
    out.tail_min_eta2 = traj.min_eta2_sup;
    out.converged_to_zero = traj.max_eta2_sup < cfg.tol;
    out.tail_mean = Vector::Zero(model.size());
    for (const auto& s : tail) out.tail_mean += s;
    out.tail_mean /= static_cast<double>(tail.size());

    auto matches = [&](int p) {
        for (size_t t = 0; t + p < tail.size(); ++t) {
            const double scale = std::max(1.0, tail[t].lpNorm<Eigen::Infinity>());
            if ((tail[t + p] - tail[t]).lpNorm<Eigen::Infinity>() >= cfg.tol * scale) return false;
        }
        return true;
    };

    for (int p = 1; p <= 8; ++p) {
        if (!matches(p)) continue;
        // Minimality: no proper divisor may pass (smaller p already failed,
        // but divisors are re-checked for the record).
        bool minimal = true;
        for (int d = 1; d < p; ++d)
            if (p % d == 0 && matches(d)) minimal = false;
        if (!minimal) continue;
        out.period_class = static_cast<PeriodClass>(p);
        // Cycle points, re-verified by p-fold application of the map.
        Vector x = tail.back();
        for (int k = 0; k < p; ++k) {
            out.cycle_points.push_back(x);
            x = model.step(x);
        }
        const double scale = std::max(1.0, out.cycle_points.front().lpNorm<Eigen::Infinity>());
        if ((x - out.cycle_points.front()).lpNorm<Eigen::Infinity>() >= cfg.tol * scale) {
            out.period_class = PeriodClass::Above8;
            out.cycle_points.clear();
        }
        return out;
    }
    out.period_class = PeriodClass::Above8;
    return out;
}

TailStats persistence_tail_stats(const MetapopModel& model, const std::vector<Vector>& x0_set,
                                 const SimConfig& cfg) {
    TailStats stats;
    for (const auto& x0 : x0_set) {
        if (x0.minCoeff() <= 0.0) throw DomainError("persistence starts must be componentwise > 0");
        const auto traj = model.simulate(x0, cfg.T, cfg.burn_in, cfg.window);
        stats.min_eta1 = std::min(stats.min_eta1, traj.min_eta1);
        stats.min_eta2_l1 = std::min(stats.min_eta2_l1, traj.min_eta2_l1);
        stats.min_eta2_sup = std::min(stats.min_eta2_sup, traj.min_eta2_sup);
    }
    return stats;
}

std::optional<LyapunovCheck> lyapunov_decrease_check(const MetapopModel& model,
                                                     const std::vector<Trajectory>& orbits) {
    // Structural hypotheses mirror the GAS classification.
    const auto verdict = classify_extinction(model);
    if (!verdict.extinction_gas_prop2) return std::nullopt;
    const auto cert =
        lemma1_certificate(model.jacobian_at_origin().transpose(), CertificateDirection::Contract);
    if (!cert) return std::nullopt;
    const Vector& v = cert->v;

    LyapunovCheck check;
    for (const auto& orbit : orbits) {
        for (size_t t = 0; t + 1 < orbit.tail.size(); ++t) {
            const Vector& x = orbit.tail[t];
            if (x.lpNorm<1>() == 0.0) continue;
            ++check.steps_checked;
            if (v.dot(orbit.tail[t + 1]) >= v.dot(x)) {
                ++check.violations;
                if (!check.first_violation_state) check.first_violation_state = x;
            }
        }
    }
    return check;
}

CompareResult total_population_compare(const std::function<MetapopModel(double)>& make_model,
                                       const std::vector<GrowthMap>& isolated_maps, double lo,
                                       double hi, int resolution, long T, const Vector& x0) {
    if (resolution < 2) throw ConfigError("compare needs resolution >= 2");
    CompareResult out;

    auto isolated_total = [&]() {
        double total = 0.0;
        for (size_t i = 0; i < isolated_maps.size(); ++i) {
            double x = x0[static_cast<long>(i)];
            for (long t = 0; t < T; ++t) x = isolated_maps[i].eval_f(x);
            total += x;
        }
        return total;
    }();

    auto coupled_total = [&](double p) {
        const auto model = make_model(p);
        Vector x = x0;
        for (long t = 0; t < T; ++t) x = model.step(x);
        return x.sum();
    };

    for (int k = 0; k < resolution; ++k) {
        const double p = lo + (hi - lo) * k / (resolution - 1.0);
        out.table.push_back({p, coupled_total(p), isolated_total});
    }

    for (size_t k = 0; k + 1 < out.table.size(); ++k) {
        const double d0 = out.table[k].coupled_total - isolated_total;
        const double d1 = out.table[k + 1].coupled_total - isolated_total;
        if (d0 == 0.0) {
            out.critical_value = out.table[k].parameter;
            break;
        }
        if (d0 * d1 < 0.0) {
            double a = out.table[k].parameter, b = out.table[k + 1].parameter;
            double da = d0;
            while (b - a > 0.005) {
                const double m = 0.5 * (a + b);
                const double dm = coupled_total(m) - isolated_total;
                if (da * dm <= 0.0)
                    b = m;
                else {
                    a = m;
                    da = dm;
                }
            }
            out.critical_value = 0.5 * (a + b);
            break;
        }
    }
    return out;
}

std::vector<BasinSample> sample_basin(const MetapopModel& model, const std::vector<Vector>& starts,
                                      const Vector& reference, long T, double tol) {
    std::vector<BasinSample> out;
    for (const auto& x0 : starts) {
        Vector x = x0;
        for (long t = 0; t < T; ++t) x = model.step(x);
        BasinLabel label = BasinLabel::Other;
        if (x.lpNorm<Eigen::Infinity>() < tol)
            label = BasinLabel::ToZero;
        else if ((x - reference).lpNorm<Eigen::Infinity>() < tol)
            label = BasinLabel::ToAttractor;
        out.push_back({x0, label, x});
    }
    return out;
}

}  // namespace metapop
