#include "ssflab/grid_io.hpp"

#include <cstdio>
#include <fstream>

#include "ssflab/errors.hpp"

namespace ssflab {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // guard against locale leakage: the formats here must be machine-stable
    for (char& c : buf)
        if (c == ',') c = '.';
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << content;
    if (!out) throw ConfigError("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw DomainError("CSV row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    write_text(path, out);
}

void write_json(const std::string& path, const nlohmann::json& j) {
    write_text(path, j.dump(2) + "\n");
}

nlohmann::json grid_metadata(const SpectralShiftGrid& grid) {
    nlohmann::json j;
    j["method"] = grid.method == XiMethod::Counting ? "counting" : "phase";
    j["geometry"] = grid.geometry == Geometry::Interval ? "interval" : "halfline";
    j["alpha"] = grid.alpha;
    if (grid.geometry == Geometry::Interval) {
        j["beta"] = grid.beta;
        j["R"] = grid.R;
    }
    if (grid.method == XiMethod::Phase) j["epsilon_scale"] = grid.epsilon_scale;
    j["anchor"] = grid.anchor;
    j["points"] = grid.lambdas.size();
    return j;
}

void write_grid(const std::string& csv_path, const SpectralShiftGrid& grid) {
    std::vector<std::vector<double>> rows;
    rows.reserve(grid.lambdas.size());
    for (std::size_t i = 0; i < grid.lambdas.size(); ++i)
        rows.push_back({grid.lambdas[i], grid.values[i]});
    write_csv(csv_path, {"lambda", "xi"}, rows);
    write_json(csv_path + ".json", grid_metadata(grid));
}

nlohmann::json scan_report_json(const ScanReport& rep) {
    nlohmann::json j;
    j["R_values"] = rep.R_values;
    j["det_ref"] = rep.det_ref;
    j["sup_window"] = {rep.sup_window.first, rep.sup_window.second};
    j["note"] = "all tolerances are empirical choices; no convergence rate is asserted";
    for (const auto& f : rep.fs) j["test_functions"].push_back(f.describe());
    for (const auto& w : rep.mass_windows)
        j["mass_windows"].push_back({w.first, w.second});
    j["ref_weighted"] = rep.ref_weighted;
    j["ref_masses"] = rep.ref_masses;
    j["entries"] = nlohmann::json::array();
    for (const auto& e : rep.entries) {
        nlohmann::json je;
        je["R"] = e.R;
        if (!e.error.empty()) {
            je["error"] = e.error;
        } else {
            je["weighted"] = e.weighted;
            je["masses"] = e.masses;
            je["det_gap"] = e.det_gap;
            je["sup_gap"] = e.sup_gap;
        }
        j["entries"].push_back(je);
    }
    return j;
}

void write_scan_report(const std::string& dir, const ScanReport& rep) {
    write_json(dir + "/scan.json", scan_report_json(rep));

    std::string csv = "R,quantity,value,reference,error\n";
    auto row = [&](double R, const std::string& q, double v, double ref) {
        csv += format_double(R) + "," + q + "," + format_double(v) + "," +
               format_double(ref) + "," + format_double(std::abs(v - ref)) + "\n";
    };
    for (const auto& e : rep.entries) {
        if (!e.error.empty()) continue;
        for (std::size_t i = 0; i < rep.fs.size(); ++i)
            row(e.R, "weighted:" + rep.fs[i].describe(), e.weighted[i],
                rep.ref_weighted[i]);
        for (std::size_t i = 0; i < rep.mass_windows.size(); ++i)
            row(e.R,
                "mass[" + format_double(rep.mass_windows[i].first) + "," +
                    format_double(rep.mass_windows[i].second) + "]",
                e.masses[i], rep.ref_masses[i]);
        row(e.R, "det_gap", e.det_gap, 0.0);
        row(e.R, "sup_gap", e.sup_gap, 0.0);
    }
    write_text(dir + "/scan.csv", csv);
}

} // namespace ssflab
