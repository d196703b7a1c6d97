// ssf-lab: spectral shift function laboratory driver.
//
//   ssf-lab <det|xi|scan|check|decompose> --config FILE [--out DIR]
//           [--threads N] [--verbose]
//
// Every subcommand echoes the validated configuration to <out>/config_resolved.json
// before doing any numerics, so a run directory is self-describing.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "ssflab/config.hpp"
#include "ssflab/convergence.hpp"
#include "ssflab/decomposition.hpp"
#include "ssflab/determinants.hpp"
#include "ssflab/grid_io.hpp"
#include "ssflab/greens.hpp"
#include "ssflab/ssf.hpp"

namespace {

using namespace ssflab;

struct Session {
    ExperimentConfig cfg;
    std::string out = ".";
    int threads = 0; // 0: take the config value
    bool verbose = false;

    int effective_threads() const { return threads > 0 ? threads : cfg.threads; }

    void note(const std::string& msg) const {
        if (verbose) std::cerr << "[ssf-lab] " << msg << "\n";
    }

    void prepare() {
        std::filesystem::create_directories(out);
        nlohmann::json echo = cfg.resolved();
        echo["threads"] = effective_threads();
        write_json(out + "/config_resolved.json", echo);
    }
};

std::vector<double> lambda_grid_for(const Session& s) {
    return build_lambda_grid(s.cfg.potential, BoundaryCondition(s.cfg.alpha),
                             s.cfg.lambda.max, s.cfg.lambda.coarse_step,
                             s.cfg.lambda.fine_step, s.cfg.lambda.fine_radius,
                             s.cfg.tolerances.tail);
}

// ---------------------------------------------------------------- det

int run_det(Session& s) {
    s.prepare();
    BoundaryCondition a(s.cfg.alpha), b(s.cfg.beta);
    std::vector<Complex> zs = s.cfg.z_list;
    if (zs.empty()) zs = {Complex(-1.0, 0.0), Complex(-1.0, 1.0), Complex(2.0, 0.5)};

    std::vector<double> Rs = s.cfg.R_list;
    if (s.cfg.halfline) Rs = {0.0}; // sentinel: one geometry, no endpoint

    nlohmann::json report = nlohmann::json::array();
    std::string csv = "R,re_z,im_z,re_wronskian,im_wronskian,re_nystrom,im_nystrom,rel_diff\n";
    bool any_failed = false;

    for (double R : Rs) {
        for (const Complex& z : zs) {
            nlohmann::json row;
            row["z"] = {z.real(), z.imag()};
            if (!s.cfg.halfline) row["R"] = R;
            try {
                SpectralParameter sp(z);
                Complex dw, dn;
                if (s.cfg.halfline) {
                    dw = det_wronskian_halfline(s.cfg.potential, a, sp,
                                                s.cfg.tolerances.tail);
                    dn = det_nystrom_halfline(s.cfg.potential, a, sp,
                                              s.cfg.nystrom_nodes,
                                              s.cfg.tolerances.tail);
                } else {
                    dw = det_wronskian_finite(s.cfg.potential, a, b, R, sp);
                    dn = det_nystrom_finite(s.cfg.potential, a, b, R, sp,
                                            s.cfg.nystrom_nodes);
                }
                double rel = std::abs(dw - dn) / std::max(1e-300, std::abs(dw));
                row["wronskian"] = {dw.real(), dw.imag()};
                row["nystrom"] = {dn.real(), dn.imag()};
                row["rel_diff"] = rel;
                csv += format_double(R) + "," + format_double(z.real()) + "," +
                       format_double(z.imag()) + "," + format_double(dw.real()) + "," +
                       format_double(dw.imag()) + "," + format_double(dn.real()) + "," +
                       format_double(dn.imag()) + "," + format_double(rel) + "\n";
                std::printf("z = (%g, %g)%s  det_w = (%.12g, %.12g)  det_n = (%.12g, %.12g)  rel %.3e\n",
                            z.real(), z.imag(),
                            s.cfg.halfline ? "" : ("  R = " + format_double(R)).c_str(),
                            dw.real(), dw.imag(), dn.real(), dn.imag(),
                            std::abs(dw - dn) / std::max(1e-300, std::abs(dw)));
            } catch (const std::exception& e) {
                // isolate the failure: siblings still run, exit code reports it
                row["error"] = e.what();
                any_failed = true;
                std::printf("z = (%g, %g)  ERROR: %s\n", z.real(), z.imag(), e.what());
            }
            report.push_back(row);
        }
    }
    write_json(s.out + "/determinants.json", report);
    write_text(s.out + "/determinants.csv", csv);
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------- xi

int run_xi(Session& s) {
    s.prepare();
    BoundaryCondition a(s.cfg.alpha), b(s.cfg.beta);
    std::vector<double> grid = lambda_grid_for(s);
    s.note("lambda grid: " + std::to_string(grid.size()) + " points");

    if (s.cfg.halfline) {
        SpectralShiftGrid xi = xi_halfline_phase(
            s.cfg.potential, a, grid, s.cfg.tolerances.epsilon_scale,
            s.cfg.tolerances.tail, s.effective_threads());
        write_grid(s.out + "/xi_halfline.csv", xi);
        std::printf("xi (half-line phase): %zu points, xi(end) = %.6g -> %s\n",
                    xi.lambdas.size(), xi.values.back(),
                    (s.out + "/xi_halfline.csv").c_str());
    }
    for (double R : s.cfg.R_list) {
        SpectralShiftGrid xi =
            xi_finite(s.cfg.potential, a, b, R, grid, s.effective_threads());
        std::string path = s.out + "/xi_R" + format_double(R) + ".csv";
        write_grid(path, xi);
        std::printf("xi (counting, R = %g): %zu points -> %s\n", R,
                    xi.lambdas.size(), path.c_str());
    }
    if (!s.cfg.halfline && s.cfg.R_list.empty())
        throw ConfigError("xi on an interval needs a nonempty R_list");
    return 0;
}

// ---------------------------------------------------------------- scan

int run_scan(Session& s) {
    s.prepare();
    std::vector<TestFunction> fs = s.cfg.test_functions;
    if (fs.empty())
        fs = {TestFunction::constant(1.0), TestFunction::rational(),
              TestFunction::gaussian(1.0, 1.0)};
    std::vector<std::pair<double, double>> windows = s.cfg.mass_windows;
    if (windows.empty()) windows = {{0.5, 4.0}};
    if (s.cfg.R_list.empty())
        throw ConfigError("scan needs a nonempty R_list");

    ScanReport rep = scan_infinite_volume(
        s.cfg.potential, BoundaryCondition(s.cfg.alpha), BoundaryCondition(s.cfg.beta),
        fs, s.cfg.R_list, s.cfg.sup_window, windows, s.effective_threads());
    write_scan_report(s.out, rep);

    bool any_failed = false;
    for (const auto& e : rep.entries) {
        if (!e.error.empty()) {
            any_failed = true;
            std::printf("R = %-8g ERROR: %s\n", e.R, e.error.c_str());
            continue;
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < e.weighted.size(); ++i)
            worst = std::max(worst, std::abs(e.weighted[i] - rep.ref_weighted[i]));
        std::printf("R = %-8g max weighted gap %.3e  det gap %.3e  sup gap %.3e\n",
                    e.R, worst, e.det_gap, e.sup_gap);
    }
    std::printf("report -> %s/scan.json, %s/scan.csv\n", s.out.c_str(), s.out.c_str());
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------- check

int run_check(Session& s) {
    s.prepare();
    BoundaryCondition a(s.cfg.alpha), b(s.cfg.beta);
    const Potential& V = s.cfg.potential;
    int threads = s.effective_threads();

    struct CheckRow {
        std::string name;
        double value = 0.0;
        double tol = 0.0;
        bool pass = false;
        std::string error;
    };
    std::vector<CheckRow> rows;
    auto run = [&](const std::string& name, double tol, auto&& fn) {
        CheckRow r;
        r.name = name;
        r.tol = tol;
        try {
            r.value = fn();
            r.pass = r.value <= tol;
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        rows.push_back(r);
    };

    SpectralParameter zc(Complex(-1.0, 0.7));
    double Rchk = s.cfg.R_list.empty() ? 10.0 : s.cfg.R_list.front();

    run("resolvent identity, interval vs half-line", 1e-8, [&] {
        double worst = 0.0;
        for (double x : {0.3 * Rchk, 0.7 * Rchk})
            for (double xp : {0.4 * Rchk, 0.9 * Rchk})
                worst = std::max(worst, krein_residual_interval(V, a, b, Rchk, zc, x, xp));
        return worst;
    });
    run("resolvent identity, two boundary angles", 1e-8, [&] {
        BoundaryCondition at(s.cfg.alpha < 1.0 ? s.cfg.alpha + 0.8 : s.cfg.alpha - 0.8);
        double worst = 0.0;
        for (double x : {0.5, 2.0})
            worst = std::max(worst, krein_residual_halfline(V, a, at, zc, x, 1.3));
        return worst;
    });
    run("determinant, endpoint vs origin transport", 1e-9, [&] {
        Complex d1 = det_wronskian_finite(V, a, b, Rchk, zc,
                                          WronskianVariant::AtRightEndpoint);
        Complex d2 = det_wronskian_finite(V, a, b, Rchk, zc, WronskianVariant::AtOrigin);
        return std::abs(d1 - d2) / std::abs(d1);
    });
    run("determinant, closed form vs quadrature", 1e-4, [&] {
        double worst = 0.0;
        std::vector<Complex> zs = s.cfg.z_list;
        if (zs.empty()) zs = {Complex(-1.0, 0.0), Complex(1.5, 0.5)};
        for (const Complex& z : zs) {
            SpectralParameter sp(z);
            Complex dw, dn;
            if (s.cfg.halfline) {
                dw = det_wronskian_halfline(V, a, sp, s.cfg.tolerances.tail);
                dn = det_nystrom_halfline(V, a, sp, s.cfg.nystrom_nodes,
                                          s.cfg.tolerances.tail);
            } else {
                dw = det_wronskian_finite(V, a, b, Rchk, sp);
                dn = det_nystrom_finite(V, a, b, Rchk, sp, s.cfg.nystrom_nodes);
            }
            worst = std::max(worst, std::abs(dw - dn) / std::abs(dw));
        }
        return worst;
    });
    run("free potential has identically zero shift", 1e-15, [&] {
        std::vector<double> grid;
        for (double l = -2.0; l <= 20.0; l += 0.5) grid.push_back(l);
        SpectralShiftGrid xi = xi_finite(Potential::zero(), a, b, Rchk, grid, threads);
        double worst = 0.0;
        for (double v : xi.values) worst = std::max(worst, std::abs(v));
        return worst;
    });
    run("sign split recombines on the interval", 1e-12, [&] {
        std::vector<double> grid;
        for (double l = -3.0; l <= 15.0; l += 0.25) grid.push_back(l);
        SignSplit sp = xi_sign_split(V, Geometry::Interval, a, b, Rchk, grid, threads);
        SpectralShiftGrid xi = xi_finite(V, a, b, Rchk, grid, threads);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             std::abs(sp.plus.values[i] - sp.minus.values[i] - xi.values[i]));
        return worst;
    });
    run("counting vs boundary phase below zero", 0.1, [&] {
        // below zero the half-line phase rounds to the large-interval counting
        // staircase except near eigenvalues; report the mismatch fraction
        std::vector<double> bs = halfline_bound_states(V, a, s.cfg.tolerances.tail);
        double anchor = -2.0;
        for (double e : bs) anchor = std::min(anchor, e - 1.0);
        std::vector<double> grid{anchor};
        for (double l = anchor + 0.513; l < -0.05; l += 0.171) grid.push_back(l);
        SpectralShiftGrid cnt = xi_finite(V, a, b, 30.0, grid, threads);
        SpectralShiftGrid ph =
            xi_halfline_phase(V, a, grid, s.cfg.tolerances.epsilon_scale,
                              s.cfg.tolerances.tail, threads);
        int bad = 0;
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (std::round(ph.values[i]) != cnt.values[i]) ++bad;
        return double(bad) / double(grid.size() - 1);
    });
    run("rank-one truncation bound", 1e-12, [&] {
        return std::max(0.0, rank_one_gap(50, 200, s.cfg.seed));
    });

    nlohmann::json jrep = nlohmann::json::array();
    bool any_failed = false;
    for (const auto& r : rows) {
        nlohmann::json jr;
        jr["name"] = r.name;
        jr["tol"] = r.tol;
        if (r.error.empty()) {
            jr["value"] = r.value;
            jr["pass"] = r.pass;
            std::printf("%-48s %s  (%.3e <= %.1e)\n", r.name.c_str(),
                        r.pass ? "PASS" : "FAIL", r.value, r.tol);
            if (!r.pass) any_failed = true;
        } else {
            jr["error"] = r.error;
            std::printf("%-48s FAIL  (%s)\n", r.name.c_str(), r.error.c_str());
            any_failed = true;
        }
        jrep.push_back(jr);
    }
    write_json(s.out + "/check.json", jrep);
    return any_failed ? 1 : 0;
}

// ---------------------------------------------------------------- decompose

int run_decompose(Session& s) {
    s.prepare();
    if (!s.cfg.split)
        throw ConfigError("decompose needs a split {R1, R2} block in the config");
    const SplitGeometry& split = *s.cfg.split;
    int threads = s.effective_threads();

    std::vector<double> grid;
    double top = std::min(s.cfg.lambda.max, 40.0);
    for (double l = -4.0; l <= top; l += 0.05) grid.push_back(l);

    SpectralShiftGrid full = xi_finite(s.cfg.potential, BoundaryCondition(0.0),
                                       BoundaryCondition(0.0), split.R2, grid, threads);
    SpectralShiftGrid dsum = xi_direct_sum(s.cfg.potential, split, grid, threads);
    SpectralShiftGrid corr = xi_split_correction(s.cfg.potential, split, grid, threads);
    write_grid(s.out + "/xi_full.csv", full);
    write_grid(s.out + "/xi_direct_sum.csv", dsum);
    write_grid(s.out + "/xi_correction.csv", corr);

    double worst_int = 0.0;
    for (double v : corr.values)
        worst_int = std::max(worst_int, std::abs(v - std::round(v)));

    SpectralParameter sp(Complex(-2.0, 0.9));
    double worst_res = 0.0;
    for (double x : {0.4 * split.R1, 0.5 * (split.R1 + split.R2)})
        for (double xp : {0.8 * split.R1, 0.9 * split.R2})
            worst_res = std::max(worst_res,
                                 krein_split_residual(s.cfg.potential, split, sp, x, xp));

    nlohmann::json j;
    j["R1"] = split.R1;
    j["R2"] = split.R2;
    j["correction_integer_residual"] = worst_int;
    j["decoupling_identity_residual"] = worst_res;
    write_json(s.out + "/decompose.json", j);

    std::printf("correction integer residual %.3e, decoupling identity residual %.3e\n",
                worst_int, worst_res);
    std::printf("grids -> %s/xi_{full,direct_sum,correction}.csv\n", s.out.c_str());
    return (worst_int <= 1e-10 && worst_res <= 1e-8) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral shift function laboratory"};
    app.require_subcommand(1);

    std::string config_path, out_override;
    int threads = 0;
    bool verbose = false;
    app.add_option("--config", config_path, "experiment JSON")->required();
    app.add_option("--out", out_override, "output directory (overrides the config)");
    app.add_option("--threads", threads, "worker threads (overrides the config)");
    app.add_flag("--verbose", verbose, "progress notes on stderr");

    auto* det = app.add_subcommand("det", "perturbation determinants, both routes");
    auto* xi = app.add_subcommand("xi", "spectral shift grids");
    auto* scan = app.add_subcommand("scan", "finite-volume convergence scan");
    auto* check = app.add_subcommand("check", "internal consistency suite");
    auto* decompose = app.add_subcommand("decompose", "Dirichlet splitting analysis");
    for (auto* sub : {det, xi, scan, check, decompose}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        Session s;
        s.cfg = ssflab::load_config(config_path);
        s.out = out_override.empty() ? s.cfg.out_dir : out_override;
        s.threads = threads;
        s.verbose = verbose;

        if (det->parsed()) return run_det(s);
        if (xi->parsed()) return run_xi(s);
        if (scan->parsed()) return run_scan(s);
        if (check->parsed()) return run_check(s);
        if (decompose->parsed()) return run_decompose(s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
