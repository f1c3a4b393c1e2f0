#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "zbw/density.hpp"
#include "zbw/dirac_beat.hpp"
#include "zbw/kinematics.hpp"

namespace zbw {

inline constexpr const char* kVersion = "1.0.0";

// Momentum-cell ensemble file: a JSON array of cells (or {"cells": [...],
// "mass_g": m}); each cell {p: [3], sigma, a: [4 [re,im]], b: [4 [re,im]]}.
BeatEnsemble load_beat_ensemble(const std::string& path,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

// Oscillation-mode file: a JSON array of modes (or {"modes": [...],
// "lambda_unit_cm": x}); each mode {A: [3], phi: [3], sigma}. The length unit
// defaults to the electron lambda_C / 4 pi.
ModeEnsemble load_mode_ensemble(const std::string& path,
                                const PhysicalConstants& k = PhysicalConstants::cgs());

// Plain-text grid format:
//   ZBWGRID v1 nx ny nz ox oy oz spacing total_charge
//   ix iy iz q        (occupied cells, ascending linear index, %.17g)
void write_gridfile(const std::string& path, const DensityGrid& grid);
DensityGrid read_gridfile(const std::string& path);

// CSV with a "# zbw-csv v1" first line, then a header row, then %.12g data.
void write_csv(const std::string& path, std::span<const std::string> columns,
               const std::vector<std::vector<double>>& rows);

// Reproducibility sidecar written next to every output file.
struct RunManifest {
    std::string subcommand;
    nlohmann::json parameters;  // resolved values actually used
    std::optional<std::uint64_t> seed;
    std::vector<std::string> outputs;
    double wall_time_s = 0.0;
};

std::string manifest_path_for(const std::string& output_path);
void write_manifest(const RunManifest& manifest);

}  // namespace zbw
