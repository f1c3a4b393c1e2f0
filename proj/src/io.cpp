#include "zbw/io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace zbw {

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    return nlohmann::json::parse(in);
}

Vec3 vec3_from(const nlohmann::json& arr) {
    if (!arr.is_array() || arr.size() != 3)
        throw std::runtime_error("expected a 3-element array");
    return {arr.at(0).get<double>(), arr.at(1).get<double>(), arr.at(2).get<double>()};
}

Spinor spinor_from(const nlohmann::json& arr) {
    if (!arr.is_array() || arr.size() != 4)
        throw std::runtime_error("expected 4 [re,im] amplitude pairs");
    Spinor s;
    for (int i = 0; i < 4; ++i) {
        const auto& pair = arr.at(i);
        if (!pair.is_array() || pair.size() != 2)
            throw std::runtime_error("amplitude must be an [re,im] pair");
        s[i] = cplx(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return s;
}

}  // namespace

BeatEnsemble load_beat_ensemble(const std::string& path, const PhysicalConstants& k) {
    const nlohmann::json doc = load_json(path);
    nlohmann::json cells;
    double mass_g = k.m_e;
    if (doc.is_array()) {
        cells = doc;
    } else {
        cells = doc.at("cells");
        if (doc.contains("mass_g")) mass_g = doc.at("mass_g").get<double>();
    }
    BeatEnsemble ens;
    ens.mass_g = mass_g;
    ens.cells.reserve(cells.size());
    for (const auto& cell : cells)
        ens.cells.push_back(MomentumCell::make(
            vec3_from(cell.at("p")), cell.at("sigma").get<double>(),
            spinor_from(cell.at("a")), spinor_from(cell.at("b")), mass_g, k));
    ens.validate();
    return ens;
}

ModeEnsemble load_mode_ensemble(const std::string& path, const PhysicalConstants& k) {
    const nlohmann::json doc = load_json(path);
    nlohmann::json modes;
    double lambda_unit = lambda_unit_for_mass(k.m_e, k);
    if (doc.is_array()) {
        modes = doc;
    } else {
        modes = doc.at("modes");
        if (doc.contains("mass_g"))
            lambda_unit = lambda_unit_for_mass(doc.at("mass_g").get<double>(), k);
        if (doc.contains("lambda_unit_cm"))
            lambda_unit = doc.at("lambda_unit_cm").get<double>();
    }
    ModeEnsemble ens;
    ens.lambda_unit = lambda_unit;
    ens.modes.reserve(modes.size());
    for (const auto& m : modes) {
        OscillationMode mode;
        const Vec3 a = vec3_from(m.at("A"));
        mode.amplitude = {a.x, a.y, a.z};
        if (m.contains("phi")) {
            const Vec3 p = vec3_from(m.at("phi"));
            mode.phase = {p.x, p.y, p.z};
        }
        if (m.contains("sigma")) mode.weight = m.at("sigma").get<double>();
        ens.modes.push_back(mode);
    }
    ens.validate();
    return ens;
}

void write_gridfile(const std::string& path, const DensityGrid& grid) {
    grid.validate();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << fmt::format("ZBWGRID v1 {} {} {} {:.17g} {:.17g} {:.17g} {:.17g} {:.17g}\n",
                       grid.spec.n[0], grid.spec.n[1], grid.spec.n[2],
                       grid.spec.origin.x, grid.spec.origin.y, grid.spec.origin.z,
                       grid.spec.spacing, grid.total_charge);
    for (const auto& cell : grid.occupied())
        out << fmt::format("{} {} {} {:.17g}\n", cell.ijk[0], cell.ijk[1],
                           cell.ijk[2], cell.q);
    if (!out) throw std::runtime_error("write failed: " + path);
}

DensityGrid read_gridfile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::string magic, version;
    in >> magic >> version;
    if (!in || magic != "ZBWGRID" || version != "v1")
        throw std::runtime_error("not a ZBWGRID v1 file: " + path);
    DensityGrid grid;
    in >> grid.spec.n[0] >> grid.spec.n[1] >> grid.spec.n[2] >>
        grid.spec.origin.x >> grid.spec.origin.y >> grid.spec.origin.z >>
        grid.spec.spacing >> grid.total_charge;
    if (!in) throw std::runtime_error("malformed ZBWGRID header: " + path);
    grid.spec.validate();
    int ix, iy, iz;
    double q;
    while (in >> ix >> iy >> iz >> q) {
        require(ix >= 0 && ix < grid.spec.n[0] && iy >= 0 && iy < grid.spec.n[1] &&
                    iz >= 0 && iz < grid.spec.n[2],
                fmt::format("cell ({}, {}, {}) within grid", ix, iy, iz));
        const bool inserted =
            grid.cells.emplace(grid.spec.linear_index(ix, iy, iz), q).second;
        require(inserted, fmt::format("cell ({}, {}, {}) listed once", ix, iy, iz));
    }
    if (!in.eof()) throw std::runtime_error("malformed ZBWGRID cell line: " + path);
    grid.validate();
    return grid;
}

void write_csv(const std::string& path, std::span<const std::string> columns,
               const std::vector<std::vector<double>>& rows) {
    require(!columns.empty(), "at least one column");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "# zbw-csv v1\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
    for (const auto& row : rows) {
        require(row.size() == columns.size(), "row matches header width");
        for (std::size_t i = 0; i < row.size(); ++i)
            out << fmt::format("{:.12g}", row[i]) << (i + 1 < row.size() ? "," : "\n");
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string manifest_path_for(const std::string& output_path) {
    return output_path + ".manifest.json";
}

void write_manifest(const RunManifest& manifest) {
    require(!manifest.outputs.empty(), "manifest has at least one output");
    nlohmann::json j;
    j["subcommand"] = manifest.subcommand;
    j["parameters"] = manifest.parameters;
    if (manifest.seed)
        j["seed"] = *manifest.seed;
    else
        j["seed"] = nullptr;
    j["versions"] = {{"zbw", kVersion}};
    j["outputs"] = manifest.outputs;
    j["wall_time_s"] = manifest.wall_time_s;
    const std::string path = manifest_path_for(manifest.outputs.front());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace zbw
