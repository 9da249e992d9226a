#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "metapop/analysis.hpp"
#include "metapop/model.hpp"

namespace metapop {

struct SweepAxis {
    std::string parameter;  // dotted path into the scenario, echoed in output
    double lower = 0.0;
    double upper = 1.0;
    int resolution = 2;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // 1 or 2
    SimConfig sim;
    Vector x0;
};

struct SweepCell {
    double axis1_value = 0.0;
    double axis2_value = 0.0;
    bool valid = true;  // false when the cell's model violates (D)
    PeriodClass period_class = PeriodClass::Above8;
    Vector tail_mean;  // per-region mean over the retained tail window
    bool converged_to_zero = false;
};

struct SweepResult {
    SweepSpec spec;
    std::vector<SweepCell> cells;  // row-major: axis1 outer, axis2 inner
    double wall_seconds = 0.0;
};

// Cells are pure, independent tasks; results are merged in index order so
// output is identical for any thread count.
using CellModelFactory = std::function<MetapopModel(double, double)>;

SweepResult sweep_1d(const SweepSpec& spec, const std::function<MetapopModel(double)>& make_model,
                     int threads = 1);

SweepResult sweep_2d(const SweepSpec& spec, const CellModelFactory& make_model, int threads = 1);

std::string sweep_to_csv(const SweepResult& result);

}  // namespace metapop
