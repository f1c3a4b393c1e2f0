#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/density.hpp"
#include "zbw/vec3.hpp"

namespace zbw {

// Electrostatic self-energy of a uniformly charged spherical shell, q^2/2r0.
double shell_self_energy(double r0_cm, double q_statc);

// Sum over unordered pairs of q_i q_j / r_ij. Deterministic for any thread
// count: pair sums are accumulated per fixed row block and the block results
// are combined in index order.
double pairwise_energy(std::span<const Vec3> positions_cm,
                       std::span<const double> charges_statc, int threads = 1);

struct SelfEnergyReport {
    double w_erg = 0.0;
    double w_ev = 0.0;
    std::string method;      // "analytic" or "pairwise"
    std::size_t n_cells = 0;
    double spacing_cm = 0.0;
    std::string note;        // diagnostics, e.g. "resolution-limited"
};

// Cell-center pairwise self-energy of a charge grid (self-cell term excluded).
SelfEnergyReport pairwise_self_energy(const DensityGrid& grid, int threads = 1,
                                      const PhysicalConstants& k = PhysicalConstants::cgs());

SelfEnergyReport shell_self_energy_report(double r0_cm, double q_statc,
                                          const PhysicalConstants& k = PhysicalConstants::cgs());

struct ConvergencePoint {
    double spacing_cm = 0.0;
    double w_erg = 0.0;
    // Relative change from the previous (coarser) spacing; NaN for the first.
    double rel_change = 0.0;
};

// Evaluate the pairwise self-energy of generator(spacing) for each spacing in
// strictly decreasing order and report the change between successive levels.
std::vector<ConvergencePoint> convergence_study(
    const std::function<DensityGrid(double)>& generator,
    std::span<const double> spacings_cm, int threads = 1,
    const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace zbw
