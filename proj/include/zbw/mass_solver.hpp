#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/density.hpp"
#include "zbw/electrostatics.hpp"
#include "zbw/kinematics.hpp"

namespace zbw {

// A scale-free oscillation geometry plus the discretization of its
// self-energy pipeline. Amplitudes are in units of lambda_unit, so the same
// spec describes the geometry at every trial mass.
struct GeometrySpec {
    std::vector<OscillationMode> modes;
    int cells_per_lambda = 24;        // grid cells per lambda_eff
    std::uint64_t n_samples = 1000000;
    std::uint64_t seed = 0;

    void validate() const;
};

// Electrostatic self-energy w_Z(mu) of the time-marginal charge distribution
// of the geometry at trial mass mu. The grid is sized in units of lambda_eff,
// so w_Z is homogeneous of degree 1 in mu by construction (exactly so for
// power-of-two mass ratios).
double w_z(double mu_g, const GeometrySpec& geom, int threads = 1,
           const PhysicalConstants& k = PhysicalConstants::cgs());

// The grid w_z integrates over; exposed for inspection and the CLI.
DensityGrid geometry_density(double mu_g, const GeometrySpec& geom, int threads = 1,
                             const PhysicalConstants& k = PhysicalConstants::cgs());

struct RatioEstimate {
    double ratio = 0.0;   // w_Z(mu) / mu c^2 at the electron mass
    double spread = 0.0;  // relative variation of the ratio across two decades
};

RatioEstimate dimensionless_ratio(const GeometrySpec& geom, int threads = 1,
                                  const PhysicalConstants& k = PhysicalConstants::cgs());

enum class FixedPointKind { degenerate, roots, none };

struct FixedPointRoot {
    double mu_g = 0.0;
    double residual = 0.0;  // |w(mu) - mu c^2| / mu c^2 at the root
};

struct FixedPointVerdict {
    FixedPointKind kind = FixedPointKind::none;
    double ratio = 0.0;               // w(mu) / mu c^2 at the range midpoint
    double homogeneity_defect = 0.0;  // spread of the ratio across the range
    std::vector<FixedPointRoot> roots;  // ascending in mu
};

const char* to_string(FixedPointKind kind);

// Solve w(mu) = mu c^2 on [mu_min, mu_max]. If w(mu)/mu is constant across
// the range to within tolerance, the equation fixes no scale and the verdict
// is degenerate. Otherwise the range is scanned on a log grid (64 points per
// decade) and each sign change of w(mu) - mu c^2 is bisected to tolerance.
FixedPointVerdict solve_fixed_point(const std::function<double(double)>& w_of_mu,
                                    double mu_min_g, double mu_max_g,
                                    double tolerance = 1e-6,
                                    const PhysicalConstants& k = PhysicalConstants::cgs());

FixedPointVerdict solve_fixed_point(const GeometrySpec& geom, double mu_min_g,
                                    double mu_max_g, double tolerance = 1e-6,
                                    int threads = 1,
                                    const PhysicalConstants& k = PhysicalConstants::cgs());

// Flavour question: does the fixed point admit several discrete masses?
struct FlavourScan {
    bool degenerate = false;
    std::vector<FixedPointRoot> roots;
    std::string note;
};

FlavourScan flavour_scan(const std::function<double(double)>& w_of_mu,
                         double mu_min_g, double mu_max_g, double tolerance = 1e-6,
                         const PhysicalConstants& k = PhysicalConstants::cgs());

// Shell idealization: all charge on a sphere of radius lambda_unit(mu).
// Analytically w/mu c^2 = 2 pi e^2 / h c, the fine-structure constant.
double shell_ratio_analytic(const PhysicalConstants& k = PhysicalConstants::cgs());

// Same ratio from the discrete pipeline (deposition + pairwise sum) at the
// given resolution; approaches the analytic value from below.
double shell_ratio_numeric(int cells_per_radius, int threads = 1,
                           const PhysicalConstants& k = PhysicalConstants::cgs());

// Test seam: w(mu) = sum_k coeffs[k] mu^k.
std::function<double(double)> polynomial_functional(std::span<const double> coeffs);

}  // namespace zbw
