#include "metapop/scenario.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace metapop {

using nlohmann::json;

namespace {

double need(const std::map<std::string, double>& params, const std::string& key,
            const std::string& what) {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError(what + " is missing parameter '" + key + "'");
    return it->second;
}

SimConfig sim_from_json(const json& j) {
    SimConfig sim;
    if (j.contains("T")) sim.T = j.at("T").get<long>();
    if (j.contains("burn_in")) sim.burn_in = j.at("burn_in").get<long>();
    if (j.contains("window")) sim.window = j.at("window").get<int>();
    if (j.contains("tol")) sim.tol = j.at("tol").get<double>();
    return sim;
}

json sim_to_json(const SimConfig& sim) {
    return {{"T", sim.T}, {"burn_in", sim.burn_in}, {"window", sim.window}, {"tol", sim.tol}};
}

Vector vector_from_json(const json& j) {
    Vector v(j.size());
    for (size_t i = 0; i < j.size(); ++i) v[static_cast<long>(i)] = j.at(i).get<double>();
    return v;
}

json vector_to_json(const Vector& v) {
    json j = json::array();
    for (long i = 0; i < v.size(); ++i) j.push_back(v[i]);
    return j;
}

}  // namespace

GrowthMap build_map(const MapSpec& spec) {
    const MapKind kind = map_kind_from_string(spec.kind);
    const std::string what = spec.kind + " map";
    switch (kind) {
        case MapKind::Ricker:
            return GrowthMap::ricker(need(spec.params, "a", what), need(spec.params, "b", what));
        case MapKind::Hassell:
            return GrowthMap::hassell(need(spec.params, "a", what), need(spec.params, "b", what),
                                      need(spec.params, "c", what));
        case MapKind::GeneralisedBevertonHolt:
            return GrowthMap::generalised_beverton_holt(need(spec.params, "a", what),
                                                        need(spec.params, "b", what),
                                                        need(spec.params, "c", what));
        case MapKind::Logistic:
            return GrowthMap::logistic(need(spec.params, "a", what));
        case MapKind::GammaGauss:
            return GrowthMap::gamma_gauss(need(spec.params, "gamma", what));
    }
    throw ConfigError("unreachable map kind");
}

DispersalFunction build_dispersal(const DispersalSpec& spec) {
    const DispersalKind kind = dispersal_kind_from_string(spec.kind);
    const std::string what = spec.kind + " dispersal";
    if (kind == DispersalKind::Constant)
        return DispersalFunction::constant(need(spec.params, "d", what));
    return DispersalFunction::richards(need(spec.params, "r", what), need(spec.params, "k", what),
                                       need(spec.params, "s", what));
}

MetapopModel build_model(const Scenario& scenario) {
    std::vector<GrowthMap> maps;
    for (const auto& r : scenario.regions) maps.push_back(build_map(r));
    const int n = static_cast<int>(maps.size());
    std::vector<DispersalFunction> entries;
    for (const auto& row : scenario.dispersal)
        for (const auto& d : row) entries.push_back(build_dispersal(d));
    return MetapopModel(std::move(maps), DispersalMatrix(n, std::move(entries)));
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario parse error: ") + e.what());
    }

    Scenario s;
    s.name = j.value("name", "");
    if (!j.contains("regions") || j.at("regions").empty())
        throw ConfigError("scenario needs a non-empty 'regions' list");
    for (const auto& rj : j.at("regions")) {
        MapSpec ms;
        ms.kind = rj.at("kind").get<std::string>();
        for (auto it = rj.begin(); it != rj.end(); ++it)
            if (it.key() != "kind") ms.params[it.key()] = it.value().get<double>();
        s.regions.push_back(std::move(ms));
    }
    const size_t n = s.regions.size();

    if (!j.contains("dispersal")) throw ConfigError("scenario needs a 'dispersal' matrix");
    const auto& dj = j.at("dispersal");
    if (dj.size() != n)
        throw ConfigError("dispersal matrix must have one row per region (" +
                          std::to_string(n) + ")");
    for (const auto& rowj : dj) {
        if (rowj.size() != n) throw ConfigError("dispersal matrix rows must have n entries");
        std::vector<DispersalSpec> row;
        for (const auto& ej : rowj) {
            DispersalSpec ds;
            ds.kind = ej.at("kind").get<std::string>();
            for (auto it = ej.begin(); it != ej.end(); ++it)
                if (it.key() != "kind") ds.params[it.key()] = it.value().get<double>();
            row.push_back(std::move(ds));
        }
        s.dispersal.push_back(std::move(row));
    }

    const auto defaults = j.value("defaults", json::object());
    s.sim = sim_from_json(defaults);
    if (defaults.contains("x0"))
        s.x0 = vector_from_json(defaults.at("x0"));
    else
        s.x0 = Vector::Ones(static_cast<long>(n));
    if (s.x0.size() != static_cast<long>(n)) throw ConfigError("x0 dimension must match regions");

    if (j.contains("sweep")) {
        const auto& sj = j.at("sweep");
        SweepSpec spec;
        for (const auto& aj : sj.at("axes")) {
            SweepAxis axis;
            axis.parameter = aj.at("parameter").get<std::string>();
            axis.lower = aj.at("lower").get<double>();
            axis.upper = aj.at("upper").get<double>();
            axis.resolution = aj.at("resolution").get<int>();
            spec.axes.push_back(std::move(axis));
        }
        if (spec.axes.empty() || spec.axes.size() > 2)
            throw ConfigError("sweep needs 1 or 2 axes");
        spec.sim = sj.contains("sim") ? sim_from_json(sj.at("sim")) : s.sim;
        spec.x0 = sj.contains("x0") ? vector_from_json(sj.at("x0")) : s.x0;
        s.sweep = std::move(spec);
    }

    if (j.contains("compare")) {
        const auto& cj = j.at("compare");
        CompareSpec spec;
        spec.parameter = cj.at("parameter").get<std::string>();
        if (cj.contains("linked"))
            for (const auto& lj : cj.at("linked")) spec.linked.push_back(lj.get<std::string>());
        spec.lower = cj.at("lower").get<double>();
        spec.upper = cj.at("upper").get<double>();
        spec.resolution = cj.at("resolution").get<int>();
        s.compare = std::move(spec);
    }

    // Surface (D) violations and bad parameters at parse time.
    build_model(s);
    return s;
}

std::string serialize_scenario(const Scenario& s) {
    json j;
    j["name"] = s.name;
    j["regions"] = json::array();
    for (const auto& r : s.regions) {
        json rj = {{"kind", r.kind}};
        for (const auto& [k, v] : r.params) rj[k] = v;
        j["regions"].push_back(rj);
    }
    j["dispersal"] = json::array();
    for (const auto& row : s.dispersal) {
        json rowj = json::array();
        for (const auto& d : row) {
            json dj = {{"kind", d.kind}};
            for (const auto& [k, v] : d.params) dj[k] = v;
            rowj.push_back(dj);
        }
        j["dispersal"].push_back(rowj);
    }
    json defaults = sim_to_json(s.sim);
    defaults["x0"] = vector_to_json(s.x0);
    j["defaults"] = defaults;
    if (s.sweep) {
        json sj;
        sj["axes"] = json::array();
        for (const auto& axis : s.sweep->axes)
            sj["axes"].push_back({{"parameter", axis.parameter},
                                  {"lower", axis.lower},
                                  {"upper", axis.upper},
                                  {"resolution", axis.resolution}});
        sj["sim"] = sim_to_json(s.sweep->sim);
        sj["x0"] = vector_to_json(s.sweep->x0);
        j["sweep"] = sj;
    }
    if (s.compare) {
        json cj = {{"parameter", s.compare->parameter},
                   {"lower", s.compare->lower},
                   {"upper", s.compare->upper},
                   {"resolution", s.compare->resolution}};
        if (!s.compare->linked.empty()) cj["linked"] = s.compare->linked;
        j["compare"] = cj;
    }
    return j.dump(2) + "\n";
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

bool operator==(const Scenario& a, const Scenario& b) {
    return serialize_scenario(a) == serialize_scenario(b);
}

void apply_parameter(Scenario& scenario, const std::string& path, double value) {
    std::vector<std::string> parts;
    std::istringstream is(path);
    for (std::string part; std::getline(is, part, '.');) parts.push_back(part);
    try {
        if (parts.size() == 3 && parts[0] == "region") {
            const size_t i = std::stoul(parts[1]) - 1;
            auto& params = scenario.regions.at(i).params;
            if (!params.count(parts[2])) throw ConfigError("");
            params[parts[2]] = value;
            return;
        }
        if (parts.size() == 4 && parts[0] == "dispersal") {
            const size_t i = std::stoul(parts[1]) - 1;
            const size_t j = std::stoul(parts[2]) - 1;
            auto& params = scenario.dispersal.at(i).at(j).params;
            if (!params.count(parts[3])) throw ConfigError("");
            params[parts[3]] = value;
            return;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("parameter path does not address a scalar: " + path);
}

double read_parameter(const Scenario& scenario, const std::string& path) {
    std::vector<std::string> parts;
    std::istringstream is(path);
    for (std::string part; std::getline(is, part, '.');) parts.push_back(part);
    try {
        if (parts.size() == 3 && parts[0] == "region")
            return scenario.regions.at(std::stoul(parts[1]) - 1).params.at(parts[2]);
        if (parts.size() == 4 && parts[0] == "dispersal")
            return scenario.dispersal.at(std::stoul(parts[1]) - 1)
                .at(std::stoul(parts[2]) - 1)
                .params.at(parts[3]);
    } catch (const std::exception&) {
    }
    throw ConfigError("parameter path does not address a scalar: " + path);
}

std::string spectral_report_to_json(const SpectralReport& rep) {
    json j = {{"rho", rep.rho},
              {"right_vector", vector_to_json(rep.right_vector)},
              {"left_vector", vector_to_json(rep.left_vector)},
              {"iterations", rep.iterations},
              {"residual", rep.residual},
              {"min_row_sum", rep.min_row_sum},
              {"max_column_sum", rep.max_column_sum}};
    return j.dump(2) + "\n";
}

std::string verdict_to_json(const StabilityVerdict& v) {
    json j = {{"rho0", v.rho0},
              {"r_index", v.r_index_value},
              {"max_g0", v.max_g0},
              {"flags",
               {{"ExtinctionLAS_Prop1", v.extinction_las_prop1},
                {"ExtinctionLAS_Linearization", v.extinction_las_linearization},
                {"ExtinctionGAS_Prop2", v.extinction_gas_prop2},
                {"ExtinctionUnstable_RIndex", v.extinction_unstable_r_index},
                {"ExtinctionUnstable_Linearization", v.extinction_unstable_linearization},
                {"PositiveFixedPointExists_Thm3", v.positive_fixed_point_exists_thm3},
                {"PersistenceCertified_Thm4", v.persistence_certified_thm4},
                {"Indeterminate", v.indeterminate}}},
              {"spectral",
               {{"residual", v.spectral.residual},
                {"min_row_sum", v.spectral.min_row_sum},
                {"max_column_sum", v.spectral.max_column_sum}}}};
    return j.dump(2) + "\n";
}

std::string orbit_summary_to_json(const OrbitSummary& s) {
    json cycle = json::array();
    for (const auto& p : s.cycle_points) cycle.push_back(vector_to_json(p));
    json j = {{"period_class", to_string(s.period_class)},
              {"cycle_points", cycle},
              {"tail_min_eta1", s.tail_min_eta1},
              {"tail_min_eta2", s.tail_min_eta2},
              {"tail_mean", vector_to_json(s.tail_mean)},
              {"converged_to_zero", s.converged_to_zero}};
    return j.dump(2) + "\n";
}

std::string fixed_points_to_json(const std::vector<FixedPoint>& points) {
    json j = json::array();
    for (const auto& fp : points) {
        const char* cls = fp.classification == FixedPointClass::Stable     ? "Stable"
                          : fp.classification == FixedPointClass::Unstable ? "Unstable"
                                                                           : "Marginal";
        j.push_back({{"point", vector_to_json(fp.point)},
                     {"residual", fp.residual},
                     {"classification", cls}});
    }
    return j.dump(2) + "\n";
}

std::string tail_stats_to_json(const TailStats& stats) {
    json j = {{"min_eta1", stats.min_eta1},
              {"min_eta2_l1", stats.min_eta2_l1},
              {"min_eta2_sup", stats.min_eta2_sup}};
    return j.dump(2) + "\n";
}

std::string sweep_to_json(const SweepResult& result) {
    json spec;
    spec["axes"] = json::array();
    for (const auto& axis : result.spec.axes)
        spec["axes"].push_back({{"parameter", axis.parameter},
                                {"lower", axis.lower},
                                {"upper", axis.upper},
                                {"resolution", axis.resolution}});
    spec["sim"] = sim_to_json(result.spec.sim);
    spec["x0"] = vector_to_json(result.spec.x0);

    json cells = json::array();
    for (const auto& cell : result.cells) {
        json cj = {{"axis1_value", cell.axis1_value},
                   {"period_class", cell.valid ? to_string(cell.period_class) : "invalid"},
                   {"tail_mean", vector_to_json(cell.tail_mean)},
                   {"converged_to_zero", cell.converged_to_zero},
                   {"valid", cell.valid}};
        if (result.spec.axes.size() == 2) cj["axis2_value"] = cell.axis2_value;
        cells.push_back(cj);
    }
    json j = {{"spec", spec}, {"cells", cells}, {"wall_seconds", result.wall_seconds}};
    return j.dump(2) + "\n";
}

std::string compare_to_csv(const CompareResult& result) {
    std::ostringstream os;
    os.precision(17);
    os << "parameter,coupled_total,isolated_total\n";
    for (const auto& row : result.table)
        os << row.parameter << "," << row.coupled_total << "," << row.isolated_total << "\n";
    return os.str();
}

std::string trajectory_to_csv(const Trajectory& traj) {
    std::ostringstream os;
    os.precision(17);
    const long n = traj.x0.size();
    os << "t";
    for (long i = 1; i <= n; ++i) os << ",x_" << i;
    os << "\n";
    long t = traj.T - static_cast<long>(traj.tail.size()) + 1;
    for (const auto& s : traj.tail) {
        os << t++;
        for (long i = 0; i < n; ++i) os << "," << s[i];
        os << "\n";
    }
    return os.str();
}

}  // namespace metapop
