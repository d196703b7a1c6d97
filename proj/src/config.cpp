#include "ssflab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ssflab {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be a JSON object");
    std::string unknown;
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            unknown += (unknown.empty() ? "" : ", ") + key;
    }
    if (!unknown.empty())
        throw ConfigError("unknown key(s) in " + where + ": " + unknown);
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(where + "." + key + " is required");
        return fallback;
    }
    if (!obj[key].is_number())
        throw ConfigError(where + "." + key + " must be a number");
    return obj[key].get<double>();
}

Potential parse_potential(const json& p, const std::string& base_dir) {
    if (!p.contains("kind")) throw ConfigError("potential.kind is required");
    std::string kind = p["kind"].get<std::string>();
    if (kind == "zero") {
        require_keys(p, "potential", {"kind"});
        return Potential::zero();
    }
    if (kind == "square_well") {
        require_keys(p, "potential", {"kind", "depth", "width"});
        return Potential::square_well(get_number(p, "potential", "depth", 0, true),
                                      get_number(p, "potential", "width", 0, true));
    }
    if (kind == "exponential") {
        require_keys(p, "potential", {"kind", "amplitude", "rate"});
        return Potential::exponential(get_number(p, "potential", "amplitude", 0, true),
                                      get_number(p, "potential", "rate", 0, true));
    }
    if (kind == "gaussian_bump") {
        require_keys(p, "potential", {"kind", "height", "width", "center"});
        return Potential::gaussian_bump(get_number(p, "potential", "height", 0, true),
                                        get_number(p, "potential", "width", 0, true),
                                        get_number(p, "potential", "center", 0.0));
    }
    if (kind == "grid") {
        require_keys(p, "potential", {"kind", "path", "interpolation"});
        if (!p.contains("path")) throw ConfigError("potential.path is required");
        std::string interp = p.value("interpolation", std::string("linear"));
        GridInterpolation gi;
        if (interp == "linear")
            gi = GridInterpolation::Linear;
        else if (interp == "constant")
            gi = GridInterpolation::PiecewiseConstant;
        else
            throw ConfigError("potential.interpolation must be 'linear' or 'constant'");
        std::string path = p["path"].get<std::string>();
        if (!path.empty() && path[0] != '/') path = base_dir + "/" + path;
        return load_grid_potential(path, gi);
    }
    throw ConfigError("unknown potential.kind: " + kind);
}

TestFunction parse_test_function(const json& f, int index) {
    std::string where = "test_functions[" + std::to_string(index) + "]";
    if (!f.contains("kind")) throw ConfigError(where + ".kind is required");
    std::string kind = f["kind"].get<std::string>();
    if (kind == "constant") {
        require_keys(f, where, {"kind", "value"});
        return TestFunction::constant(get_number(f, where, "value", 1.0));
    }
    if (kind == "rational") {
        require_keys(f, where, {"kind"});
        return TestFunction::rational();
    }
    if (kind == "gaussian") {
        require_keys(f, where, {"kind", "center", "width"});
        return TestFunction::gaussian(get_number(f, where, "center", 0, true),
                                      get_number(f, where, "width", 0, true));
    }
    if (kind == "sigmoid") {
        require_keys(f, where, {"kind", "center", "width"});
        return TestFunction::sigmoid(get_number(f, where, "center", 0, true),
                                     get_number(f, where, "width", 0, true));
    }
    if (kind == "indicator") {
        require_keys(f, where, {"kind", "from", "to"});
        return TestFunction::indicator(get_number(f, where, "from", 0, true),
                                       get_number(f, where, "to", 0, true));
    }
    if (kind == "mollified_indicator") {
        require_keys(f, where, {"kind", "from", "to", "width"});
        return TestFunction::mollified_indicator(get_number(f, where, "from", 0, true),
                                                 get_number(f, where, "to", 0, true),
                                                 get_number(f, where, "width", 1e-2));
    }
    throw ConfigError("unknown test function kind in " + where + ": " + kind);
}

std::pair<double, double> parse_window(const json& w, const std::string& where) {
    if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
        throw ConfigError(where + " must be a [lo, hi] number pair");
    double lo = w[0].get<double>(), hi = w[1].get<double>();
    if (lo >= hi) throw ConfigError(where + " endpoints must be increasing");
    return {lo, hi};
}

} // namespace

Potential load_grid_potential(const std::string& path, GridInterpolation interp) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open potential grid: " + path);
    std::vector<double> xs, vs;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line[0] == '#') continue;
        if (row == 1 && line.find_first_not_of("0123456789+-.eE, \t\r") != std::string::npos)
            continue; // header line
        std::istringstream ss(line);
        double x, v;
        char comma;
        if (!(ss >> x >> comma >> v) || comma != ',')
            throw ConfigError(path + ": row " + std::to_string(row) +
                              " is not 'x,v'");
        if (!xs.empty() && x <= xs.back())
            throw ConfigError(path + ": row " + std::to_string(row) +
                              " breaks monotonicity of x");
        xs.push_back(x);
        vs.push_back(v);
    }
    if (xs.size() < 2) throw ConfigError(path + ": needs at least two samples");
    return Potential::grid_sampled(std::move(xs), std::move(vs), interp);
}

ExperimentConfig parse_config(const json& j, const std::string& base_dir) {
    require_keys(j, "config",
                 {"potential", "alpha", "beta", "halfline", "R_list", "z_list",
                  "nystrom_nodes", "lambda", "test_functions", "mass_windows",
                  "sup_window", "split", "cesaro", "tolerances", "seed", "out_dir",
                  "threads"});
    ExperimentConfig cfg;
    if (!j.contains("potential")) throw ConfigError("config.potential is required");
    cfg.potential = parse_potential(j["potential"], base_dir);

    cfg.alpha = get_number(j, "config", "alpha", 0.0);
    cfg.beta = get_number(j, "config", "beta", 0.0);
    if (!(cfg.alpha >= 0.0 && cfg.alpha < M_PI))
        throw ConfigError("config.alpha must lie in [0, pi)");
    if (!(cfg.beta >= 0.0 && cfg.beta < M_PI))
        throw ConfigError("config.beta must lie in [0, pi)");

    cfg.halfline = j.value("halfline", true);

    if (j.contains("R_list")) {
        for (const auto& r : j["R_list"]) {
            if (!r.is_number() || r.get<double>() <= 0.0)
                throw ConfigError("config.R_list entries must be positive numbers");
            cfg.R_list.push_back(r.get<double>());
        }
        for (std::size_t i = 1; i < cfg.R_list.size(); ++i)
            if (cfg.R_list[i] <= cfg.R_list[i - 1])
                throw ConfigError("config.R_list must be strictly increasing");
    }

    if (j.contains("z_list")) {
        for (const auto& z : j["z_list"]) {
            auto w = parse_window(json::array({-1, 1}), "");
            (void)w;
            if (!z.is_array() || z.size() != 2)
                throw ConfigError("config.z_list entries must be [re, im] pairs");
            cfg.z_list.emplace_back(z[0].get<double>(), z[1].get<double>());
        }
    }

    cfg.nystrom_nodes = static_cast<int>(get_number(j, "config", "nystrom_nodes", 400));
    if (cfg.nystrom_nodes < 16)
        throw ConfigError("config.nystrom_nodes must be at least 16");

    if (j.contains("lambda")) {
        const auto& l = j["lambda"];
        require_keys(l, "lambda", {"max", "coarse_step", "fine_step", "fine_radius"});
        cfg.lambda.max = get_number(l, "lambda", "max", cfg.lambda.max);
        cfg.lambda.coarse_step = get_number(l, "lambda", "coarse_step", cfg.lambda.coarse_step);
        cfg.lambda.fine_step = get_number(l, "lambda", "fine_step", cfg.lambda.fine_step);
        cfg.lambda.fine_radius = get_number(l, "lambda", "fine_radius", cfg.lambda.fine_radius);
        if (cfg.lambda.coarse_step <= 0 || cfg.lambda.fine_step <= 0 ||
            cfg.lambda.fine_step > cfg.lambda.coarse_step)
            throw ConfigError("lambda steps must satisfy 0 < fine_step <= coarse_step");
    }

    if (j.contains("test_functions")) {
        int i = 0;
        for (const auto& f : j["test_functions"]) cfg.test_functions.push_back(parse_test_function(f, i++));
    }

    if (j.contains("mass_windows")) {
        int i = 0;
        for (const auto& w : j["mass_windows"])
            cfg.mass_windows.push_back(
                parse_window(w, "mass_windows[" + std::to_string(i++) + "]"));
    }
    if (j.contains("sup_window")) cfg.sup_window = parse_window(j["sup_window"], "sup_window");

    if (j.contains("split")) {
        const auto& s = j["split"];
        require_keys(s, "split", {"R1", "R2"});
        cfg.split.emplace(get_number(s, "split", "R1", 0, true),
                          get_number(s, "split", "R2", 0, true));
    }
    if (j.contains("cesaro")) {
        const auto& c = j["cesaro"];
        require_keys(c, "cesaro", {"lambda", "R", "m"});
        CesaroSpec cs;
        cs.lambda = get_number(c, "cesaro", "lambda", cs.lambda);
        cs.R = get_number(c, "cesaro", "R", cs.R);
        cs.m = static_cast<int>(get_number(c, "cesaro", "m", cs.m));
        if (cs.R <= 0 || cs.m < 1) throw ConfigError("cesaro needs R > 0 and m >= 1");
        cfg.cesaro = cs;
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        require_keys(t, "tolerances", {"ode_rel", "quad_abs", "epsilon_scale", "tail"});
        cfg.tolerances.ode_rel = get_number(t, "tolerances", "ode_rel", cfg.tolerances.ode_rel);
        cfg.tolerances.quad_abs = get_number(t, "tolerances", "quad_abs", cfg.tolerances.quad_abs);
        cfg.tolerances.epsilon_scale =
            get_number(t, "tolerances", "epsilon_scale", cfg.tolerances.epsilon_scale);
        cfg.tolerances.tail = get_number(t, "tolerances", "tail", cfg.tolerances.tail);
        if (cfg.tolerances.ode_rel <= 0 || cfg.tolerances.quad_abs <= 0 ||
            cfg.tolerances.epsilon_scale <= 0 || cfg.tolerances.tail <= 0)
            throw ConfigError("tolerances must all be positive");
    }
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out_dir")) cfg.out_dir = j["out_dir"].get<std::string>();
    if (j.contains("threads")) {
        cfg.threads = static_cast<int>(get_number(j, "config", "threads", 1));
        if (cfg.threads < 1) throw ConfigError("config.threads must be >= 1");
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    std::string base = ".";
    auto slash = path.find_last_of('/');
    if (slash != std::string::npos) base = path.substr(0, slash);
    return parse_config(j, base);
}

nlohmann::json ExperimentConfig::resolved() const {
    json j;
    j["potential"] = potential.describe();
    j["alpha"] = alpha;
    j["beta"] = beta;
    j["halfline"] = halfline;
    j["R_list"] = R_list;
    for (const auto& z : z_list) j["z_list"].push_back({z.real(), z.imag()});
    j["nystrom_nodes"] = nystrom_nodes;
    j["lambda"] = {{"max", lambda.max},
                   {"coarse_step", lambda.coarse_step},
                   {"fine_step", lambda.fine_step},
                   {"fine_radius", lambda.fine_radius}};
    for (const auto& f : test_functions) j["test_functions"].push_back(f.describe());
    for (const auto& w : mass_windows) j["mass_windows"].push_back({w.first, w.second});
    j["sup_window"] = {sup_window.first, sup_window.second};
    if (split) j["split"] = {{"R1", split->R1}, {"R2", split->R2}};
    if (cesaro)
        j["cesaro"] = {{"lambda", cesaro->lambda}, {"R", cesaro->R}, {"m", cesaro->m}};
    j["tolerances"] = {{"ode_rel", tolerances.ode_rel},
                       {"quad_abs", tolerances.quad_abs},
                       {"epsilon_scale", tolerances.epsilon_scale},
                       {"tail", tolerances.tail}};
    j["seed"] = seed;
    j["threads"] = threads;
    return j;
}

} // namespace ssflab
