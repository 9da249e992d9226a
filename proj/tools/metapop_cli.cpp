#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "metapop/scenario.hpp"

namespace {

using namespace metapop;

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string scenario_path;
    std::string out_path;
    std::string format = "json";
    int threads = 0;
    long T = -1;
    long burn_in = -1;
    int window = -1;
    double tol = -1;
    int seed_grid = 4;
    bool gnuplot_hint = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
    cmd->add_option("--scenario", opt.scenario_path, "Scenario file (JSON)")->required();
    cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
    cmd->add_option("--format", opt.format, "Output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", opt.threads, "Worker threads (sweep only)");
    cmd->add_option("--T", opt.T, "Override simulation horizon");
    cmd->add_option("--burn-in", opt.burn_in, "Override burn-in");
    cmd->add_option("--window", opt.window, "Override tail window");
    cmd->add_option("--tol", opt.tol, "Override recurrence tolerance");
    cmd->add_option("--seed-grid", opt.seed_grid, "Fixed-point seeding density per axis");
    cmd->add_flag("--gnuplot-hint", opt.gnuplot_hint, "Print a suggested gnuplot recipe");
}

Scenario load(const CommonOptions& opt) {
    Scenario s = load_scenario_file(opt.scenario_path);
    if (opt.T >= 0) s.sim.T = opt.T;
    if (opt.burn_in >= 0) s.sim.burn_in = opt.burn_in;
    if (opt.window >= 0) s.sim.window = opt.window;
    if (opt.tol >= 0) s.sim.tol = opt.tol;
    return s;
}

int thread_count(const CommonOptions& opt) {
    if (opt.threads > 0) return opt.threads;
    if (const char* env = std::getenv("METAPOP_THREADS")) return std::max(1, std::atoi(env));
    return 1;
}

void emit(const CommonOptions& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw ConfigError("cannot open output file: " + opt.out_path);
        out << text;
    }
}

void hint(const CommonOptions& opt, const std::string& recipe) {
    if (opt.gnuplot_hint) std::cerr << "gnuplot hint:\n" << recipe << "\n";
}

int run_classify(const CommonOptions& opt) {
    const Scenario s = load(opt);
    emit(opt, verdict_to_json(classify_extinction(build_model(s))));
    return 0;
}

int run_simulate(const CommonOptions& opt) {
    const Scenario s = load(opt);
    const auto model = build_model(s);
    const auto traj = model.simulate(s.x0, s.sim.T, s.sim.burn_in, s.sim.window);
    emit(opt, trajectory_to_csv(traj));
    hint(opt, "plot 'tail.csv' using 1:2 with lines, '' using 1:3 with lines");
    return 0;
}

int run_fixed_point(const CommonOptions& opt) {
    const Scenario s = load(opt);
    const auto model = build_model(s);
    const auto seeds = default_fixed_point_seeds(model, s.x0, opt.seed_grid);
    emit(opt, fixed_points_to_json(find_fixed_points(model, seeds)));
    return 0;
}

int run_period(const CommonOptions& opt) {
    const Scenario s = load(opt);
    const auto model = build_model(s);
    emit(opt, orbit_summary_to_json(detect_period(model, s.x0, s.sim)));
    return 0;
}

int run_persist(const CommonOptions& opt) {
    const Scenario s = load(opt);
    const auto model = build_model(s);
    emit(opt, tail_stats_to_json(persistence_tail_stats(model, {s.x0}, s.sim)));
    return 0;
}

int run_compare_total(const CommonOptions& opt) {
    Scenario s = load(opt);
    if (!s.compare) throw ConfigError("scenario has no 'compare' section");
    const CompareSpec spec = *s.compare;

    auto make_model = [&](double value) {
        Scenario varied = s;
        apply_parameter(varied, spec.parameter, value);
        for (const auto& path : spec.linked) apply_parameter(varied, path, value);
        return build_model(varied);
    };
    std::vector<GrowthMap> isolated;
    for (const auto& r : s.regions) isolated.push_back(build_map(r));

    const auto result = total_population_compare(make_model, isolated, spec.lower, spec.upper,
                                                 spec.resolution, s.sim.T, s.x0);
    std::ostringstream os;
    os << compare_to_csv(result);
    if (result.critical_value)
        os << "# critical_value," << *result.critical_value << "\n";
    else
        os << "# critical_value,none\n";
    emit(opt, os.str());
    hint(opt, "plot 'compare.csv' using 1:2 with lines, '' using 1:3 with lines dt 2");
    return 0;
}

int run_sweep(const CommonOptions& opt) {
    Scenario s = load(opt);
    if (!s.sweep) throw ConfigError("scenario has no 'sweep' section");
    const SweepSpec spec = *s.sweep;

    SweepResult result;
    if (spec.axes.size() == 1) {
        auto make_model = [&](double v1) {
            Scenario varied = s;
            apply_parameter(varied, spec.axes[0].parameter, v1);
            return build_model(varied);
        };
        result = sweep_1d(spec, make_model, thread_count(opt));
    } else {
        auto make_model = [&](double v1, double v2) {
            Scenario varied = s;
            apply_parameter(varied, spec.axes[0].parameter, v1);
            apply_parameter(varied, spec.axes[1].parameter, v2);
            return build_model(varied);
        };
        result = sweep_2d(spec, make_model, thread_count(opt));
    }
    emit(opt, opt.format == "csv" ? sweep_to_csv(result) : sweep_to_json(result));
    hint(opt, "plot 'sweep.csv' using 1:4 with points pt 7 ps 0.3");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-dependent metapopulation model toolkit"};
    app.require_subcommand(1);

    CommonOptions opt;
    int (*handler)(const CommonOptions&) = nullptr;

    const std::pair<const char*, int (*)(const CommonOptions&)> commands[] = {
        {"classify", run_classify},     {"simulate", run_simulate},
        {"fixed-point", run_fixed_point}, {"period", run_period},
        {"persist", run_persist},       {"compare-total", run_compare_total},
        {"sweep", run_sweep},
    };
    for (const auto& [name, fn] : commands) {
        auto* cmd = app.add_subcommand(name);
        add_common(cmd, opt);
        cmd->callback([&handler, fn] { handler = fn; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        return handler(opt);
    } catch (const metapop::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const metapop::DomainError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const metapop::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
