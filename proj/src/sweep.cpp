#include "metapop/sweep.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

namespace metapop {

namespace {

double axis_value(const SweepAxis& axis, int k) {
    return axis.lower + (axis.upper - axis.lower) * k / (axis.resolution - 1.0);
}

void check_axis(const SweepAxis& axis) {
    if (axis.resolution < 2) throw ConfigError("sweep axis needs resolution >= 2");
    if (!(axis.lower <= axis.upper)) throw ConfigError("sweep axis needs lower <= upper");
}

SweepCell run_cell(double v1, double v2, const CellModelFactory& make_model,
                   const SimConfig& sim, const Vector& x0) {
    SweepCell cell;
    cell.axis1_value = v1;
    cell.axis2_value = v2;
    try {
        const MetapopModel model = make_model(v1, v2);
        const auto summary = detect_period(model, x0, sim);
        cell.period_class = summary.period_class;
        cell.converged_to_zero = summary.converged_to_zero;
        cell.tail_mean = summary.tail_mean;
    } catch (const ConfigError&) {
        cell.valid = false;
        cell.tail_mean = Vector::Zero(x0.size());
    }
    return cell;
}

SweepResult run_sweep(const SweepSpec& spec, const CellModelFactory& make_model, int threads,
                      bool two_axes) {
    for (const auto& axis : spec.axes) check_axis(axis);
    const auto t0 = std::chrono::steady_clock::now();

    const int n1 = spec.axes[0].resolution;
    const int n2 = two_axes ? spec.axes[1].resolution : 1;
    const int total = n1 * n2;

    SweepResult result;
    result.spec = spec;
    result.cells.resize(total);

    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1)) {
            const int k1 = idx / n2;
            const int k2 = idx % n2;
            const double v1 = axis_value(spec.axes[0], k1);
            const double v2 = two_axes ? axis_value(spec.axes[1], k2) : 0.0;
            result.cells[idx] = run_cell(v1, v2, make_model, spec.sim, spec.x0);
        }
    };

    threads = std::max(1, threads);
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

}  // namespace

SweepResult sweep_1d(const SweepSpec& spec, const std::function<MetapopModel(double)>& make_model,
                     int threads) {
    if (spec.axes.size() != 1) throw ConfigError("sweep_1d needs exactly one axis");
    return run_sweep(spec, [&](double v1, double) { return make_model(v1); }, threads, false);
}

SweepResult sweep_2d(const SweepSpec& spec, const CellModelFactory& make_model, int threads) {
    if (spec.axes.size() != 2) throw ConfigError("sweep_2d needs exactly two axes");
    return run_sweep(spec, make_model, threads, true);
}

std::string sweep_to_csv(const SweepResult& result) {
    const bool two_axes = result.spec.axes.size() == 2;
    const int n = static_cast<int>(result.spec.x0.size());
    std::ostringstream os;
    os.precision(17);
    os << "axis1_value";
    if (two_axes) os << ",axis2_value";
    os << ",period_class";
    for (int i = 1; i <= n; ++i) os << ",tail_mean_" << i;
    os << ",converged_to_zero,valid\n";
    for (const auto& cell : result.cells) {
        os << cell.axis1_value;
        if (two_axes) os << "," << cell.axis2_value;
        os << "," << (cell.valid ? to_string(cell.period_class) : "invalid");
        for (int i = 0; i < n; ++i) os << "," << cell.tail_mean[i];
        os << "," << (cell.converged_to_zero ? 1 : 0) << "," << (cell.valid ? 1 : 0) << "\n";
    }
    return os.str();
}

}  // namespace metapop
