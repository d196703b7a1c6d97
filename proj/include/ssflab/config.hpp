#ifndef SSFLAB_CONFIG_HPP
#define SSFLAB_CONFIG_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ssflab/convergence.hpp"
#include "ssflab/decomposition.hpp"
#include "ssflab/potential.hpp"
#include "ssflab/spectral.hpp"

namespace ssflab {

struct LambdaGridSpec {
    double max = 200.0;
    double coarse_step = 0.05;
    double fine_step = 1e-3;
    double fine_radius = 0.25;
};

struct Tolerances {
    double ode_rel = 1e-12;
    double quad_abs = 1e-12;
    double epsilon_scale = 1e-4;
    double tail = 1e-10;
};

struct CesaroSpec {
    double lambda = 2.0;
    double R = 40.0;
    int m = 80;
};

struct ExperimentConfig {
    Potential potential = Potential::zero();
    double alpha = 0.0;
    double beta = 0.0;
    bool halfline = true;
    std::vector<double> R_list;
    std::vector<Complex> z_list;
    int nystrom_nodes = 400;
    LambdaGridSpec lambda;
    std::vector<TestFunction> test_functions;
    std::vector<std::pair<double, double>> mass_windows;
    std::pair<double, double> sup_window{0.5, 4.0};
    std::optional<SplitGeometry> split;
    std::optional<CesaroSpec> cesaro;
    Tolerances tolerances;
    std::uint64_t seed = 12345;
    std::string out_dir = ".";
    int threads = 1;

    nlohmann::json resolved() const; // echo of the validated configuration
};

/// Parses and validates the JSON experiment file. Unknown keys are rejected
/// with their names; range violations name the offending field; sampled
/// potentials load from CSV with row-numbered errors.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const nlohmann::json& j, const std::string& base_dir);

/// Two-column CSV (x, v) with strictly increasing x.
Potential load_grid_potential(const std::string& path, GridInterpolation interp);

} // namespace ssflab

#endif
