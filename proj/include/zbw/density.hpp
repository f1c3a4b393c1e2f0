#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/kinematics.hpp"
#include "zbw/vec3.hpp"

namespace zbw {

// Uniform cartesian cell grid. origin is the low corner of cell (0,0,0).
struct GridSpec {
    std::array<int, 3> n{0, 0, 0};
    Vec3 origin;
    double spacing = 0.0;  // uniform cell edge [cm]

    static GridSpec centered_cube(int n_per_side, double spacing_cm);

    void validate() const;
    std::uint64_t n_total() const;
    std::uint64_t linear_index(int ix, int iy, int iz) const;
    std::array<int, 3> unravel(std::uint64_t idx) const;
    Vec3 cell_center(int ix, int iy, int iz) const;
    // Cell containing the point, or false if outside the grid.
    bool locate(const Vec3& p, std::array<int, 3>& out) const;
};

// Sparse charge-per-cell field on a GridSpec.
struct DensityGrid {
    GridSpec spec;
    double total_charge = 0.0;  // [statC]
    std::unordered_map<std::uint64_t, double> cells;

    struct OccupiedCell {
        std::uint64_t index;
        std::array<int, 3> ijk;
        Vec3 center;
        double q;
    };

    // Occupied cells in linear-index order (canonical order for I/O and sums).
    std::vector<OccupiedCell> occupied() const;
    double charge_sum() const;
    Vec3 dipole_about(const Vec3& point) const;
    void validate() const;
};

// Time-marginal density of the straight-line oscillation, arcsine law
// 1 / (pi sqrt(3 Lambda^2 - s^2)) on |s| < sqrt(3) Lambda.
double linear_pdf(double s_cm, double lambda_cm);

// Time-marginal line density along the cylinder loop at height z:
// 1 / (2 pi sqrt(2 Lambda^2 - z^2)) per unit arc length, |z| <= Lambda.
// Against the path speed it integrates to exactly 1 over one closure period.
double cylinder_pdf(double z_cm, double lambda_cm);

// Monte Carlo time-marginal charge deposition: phase drawn uniformly over one
// closure period, each sample deposits total_charge/n_samples into its cell.
// Deterministic for fixed (ensemble, grid, n_samples, seed) regardless of the
// number of threads: sampling is split into fixed 65536-sample blocks, each
// with a seed derived from (seed, block index), and counts are integers.
DensityGrid sample_time_marginal(const ModeEnsemble& ens, std::uint64_t n_samples,
                                 const GridSpec& grid, std::uint64_t seed,
                                 int threads = 1,
                                 const PhysicalConstants& k = PhysicalConstants::cgs());

// Deposit total_charge uniformly over the cells cut by the sphere of radius
// r0 centered in the grid box, via an equal-weight equal-area surface lattice.
DensityGrid shell_surface_grid(double r0_cm, const GridSpec& grid,
                               double total_charge = -PhysicalConstants::cgs().e);

// Sum |q| of the occupied cells into bins of the signed coordinate along
// axis_unit (measured from the grid-box center). Cells outside the binned
// range are ignored.
std::vector<double> project_onto_axis(const DensityGrid& grid, const Vec3& axis_unit,
                                      double s_min_cm, double bin_width_cm,
                                      int n_bins);

}  // namespace zbw
