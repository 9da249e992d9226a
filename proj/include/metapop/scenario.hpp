#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "metapop/analysis.hpp"
#include "metapop/model.hpp"
#include "metapop/sweep.hpp"

namespace metapop {

struct MapSpec {
    std::string kind;
    std::map<std::string, double> params;
};

struct DispersalSpec {
    std::string kind;
    std::map<std::string, double> params;
};

struct CompareSpec {
    std::string parameter;  // dotted path, e.g. "dispersal.1.2.r"
    // Extra paths set to the same scanned value (for tied parameters such
    // as r12 = r21 = r).
    std::vector<std::string> linked;
    double lower = 0.0;
    double upper = 1.0;
    int resolution = 2;
};

struct Scenario {
    std::string name;
    std::vector<MapSpec> regions;
    std::vector<std::vector<DispersalSpec>> dispersal;  // [i][j] = d_ij
    Vector x0;
    SimConfig sim;
    std::optional<SweepSpec> sweep;
    std::optional<CompareSpec> compare;
};

Scenario parse_scenario(const std::string& text);
std::string serialize_scenario(const Scenario& scenario);
Scenario load_scenario_file(const std::string& path);

bool operator==(const Scenario& a, const Scenario& b);

GrowthMap build_map(const MapSpec& spec);
DispersalFunction build_dispersal(const DispersalSpec& spec);
MetapopModel build_model(const Scenario& scenario);

// Dotted parameter paths: "region.<i>.<param>" or "dispersal.<i>.<j>.<param>"
// with 1-based indices.  Throws ConfigError for paths that do not address
// an existing scalar.
void apply_parameter(Scenario& scenario, const std::string& path, double value);
double read_parameter(const Scenario& scenario, const std::string& path);

// JSON renderings of analysis results for the CLI (full precision).
std::string verdict_to_json(const StabilityVerdict& verdict);
std::string orbit_summary_to_json(const OrbitSummary& summary);
std::string fixed_points_to_json(const std::vector<FixedPoint>& points);
std::string tail_stats_to_json(const TailStats& stats);
std::string spectral_report_to_json(const SpectralReport& report);
std::string sweep_to_json(const SweepResult& result);
std::string compare_to_csv(const CompareResult& result);

// Trajectory tail as CSV with columns t, x_1..x_n.
std::string trajectory_to_csv(const Trajectory& traj);

}  // namespace metapop
