#pragma once

#include <optional>
#include <vector>

#include "metapop/model.hpp"
#include "metapop/spectral.hpp"

namespace metapop {

struct StabilityVerdict {
    double rho0 = 0.0;
    bool extinction_las_prop1 = false;          // max_i g_i(0) < 1
    bool extinction_las_linearization = false;  // rho0 < 1
    bool extinction_gas_prop2 = false;          // structural hypotheses + rho0 < 1
    bool extinction_unstable_r_index = false;   // R_{A(0)} > 1
    bool extinction_unstable_linearization = false;
    bool positive_fixed_point_exists_thm3 = false;
    bool persistence_certified_thm4 = false;
    bool indeterminate = false;  // rho0 within the dead zone around 1
    double r_index_value = 0.0;
    double max_g0 = 0.0;
    SpectralReport spectral;
};

StabilityVerdict classify_extinction(const MetapopModel& model);

struct PersistenceCertificate {
    Vector v;   // left-Perron-based positive vector
    double r0;  // min_i (A(0)^T v)_i / v_i, > 1
};

std::optional<PersistenceCertificate> persistence_certificate(const MetapopModel& model);

enum class FixedPointClass { Stable, Unstable, Marginal };

struct FixedPoint {
    Vector point;
    double residual;
    FixedPointClass classification;
};

struct NewtonOptions {
    double residual_tol = 1e-10;
    int max_iterations = 100;
    double dedupe_tol = 1e-6;
};

std::vector<FixedPoint> find_fixed_points(const MetapopModel& model,
                                          const std::vector<Vector>& seeds,
                                          const NewtonOptions& opts = {});

// Tail states of a pilot simulation plus a coarse grid over the bounded
// absorbing box, for seeding the Newton search.
std::vector<Vector> default_fixed_point_seeds(const MetapopModel& model, const Vector& x0,
                                              int grid_per_axis = 4);

enum class PeriodClass { P1 = 1, P2, P3, P4, P5, P6, P7, P8, Above8 };

std::string to_string(PeriodClass pc);

struct OrbitSummary {
    PeriodClass period_class = PeriodClass::Above8;
    std::vector<Vector> cycle_points;  // populated when period <= 8
    double tail_min_eta1 = 0.0;
    double tail_min_eta2 = 0.0;  // sup-norm over the tail
    Vector tail_mean;            // per-region mean over the tail window
    bool converged_to_zero = false;
};

OrbitSummary detect_period(const MetapopModel& model, const Vector& x0, const SimConfig& cfg);

struct TailStats {
    double min_eta1 = std::numeric_limits<double>::infinity();
    double min_eta2_l1 = std::numeric_limits<double>::infinity();
    double min_eta2_sup = std::numeric_limits<double>::infinity();
};

TailStats persistence_tail_stats(const MetapopModel& model, const std::vector<Vector>& x0_set,
                                 const SimConfig& cfg);

struct LyapunovCheck {
    long steps_checked = 0;
    long violations = 0;
    std::optional<Vector> first_violation_state;
};

// Checks v^T x(t+1) < v^T x(t) with v from the Lemma-1 left contraction
// certificate.  Refusal (nullopt) when the structural hypotheses fail.
std::optional<LyapunovCheck> lyapunov_decrease_check(const MetapopModel& model,
                                                     const std::vector<Trajectory>& orbits);

struct CompareRow {
    double parameter;
    double coupled_total;
    double isolated_total;
};

struct CompareResult {
    std::vector<CompareRow> table;
    std::optional<double> critical_value;  // first sign change, bisected to +-0.005
};

// Callback form: the caller supplies model construction from a parameter
// value (the CLI wires this to a scenario parameter path).
CompareResult total_population_compare(const std::function<MetapopModel(double)>& make_model,
                                       const std::vector<GrowthMap>& isolated_maps, double lo,
                                       double hi, int resolution, long T, const Vector& x0);

enum class BasinLabel { ToZero, ToAttractor, Other };

struct BasinSample {
    Vector x0;
    BasinLabel label;
    Vector limit;  // last state of the probe orbit
};

// Simulates from each grid start and labels the limiting behaviour
// against a reference point (ToAttractor when the orbit settles within
// tol of it, ToZero when it decays below tol).
std::vector<BasinSample> sample_basin(const MetapopModel& model, const std::vector<Vector>& starts,
                                      const Vector& reference, long T, double tol = 1e-4);

}  // namespace metapop
