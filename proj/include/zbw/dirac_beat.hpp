#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/vec3.hpp"

namespace zbw {

using cplx = std::complex<double>;
using Spinor = std::array<cplx, 4>;
using AlphaMatrix = std::array<std::array<cplx, 4>, 4>;

enum class Axis { x = 0, y = 1, z = 2 };

// One momentum-space element sigma carrying positive- and negative-energy
// Fourier amplitudes a_k, b_k for the four spinor components.
struct MomentumCell {
    Vec3 p;        // momentum [g cm/s]
    double sigma;  // momentum-space weight, > 0
    Spinor a;      // positive-energy amplitudes
    Spinor b;      // negative-energy amplitudes
    double W;      // energy sqrt(m^2 c^4 + p^2 c^2) [erg]

    static MomentumCell make(const Vec3& p, double sigma, const Spinor& a,
                             const Spinor& b, double mass_g,
                             const PhysicalConstants& k = PhysicalConstants::cgs());
};

// Interference of the two energy branches of one cell along one axis:
// the velocity term -c[a*.alpha.b e^{-iwt} + b*.alpha.a e^{+iwt}] collapses
// to c*A*cos(w t + phi) with w = 4 pi W / h.
struct BeatComponent {
    Axis axis;
    double amplitude;  // A >= 0, dimensionless
    double phase;      // phi in (-pi, pi]
    double omega;      // 4 pi W / h [rad/s]
};

struct BeatEnsemble {
    std::vector<MomentumCell> cells;
    double mass_g;

    // sum_sigma sigma * sum_k (|a_k|^2 + |b_k|^2); 1 for a valid ensemble.
    double normalization() const;
    void normalize();
    void validate() const;

    // Isotropic Gaussian momentum ball with random amplitudes, normalized.
    // Deterministic for a fixed seed.
    static BeatEnsemble gaussian_ball(std::size_t n_cells, double p_scale_g_cm_s,
                                      std::uint64_t seed,
                                      const PhysicalConstants& k = PhysicalConstants::cgs());
};

// Dirac alpha matrix for axis in {1,2,3} (Dirac-Pauli representation).
AlphaMatrix alpha_matrix(int axis);

// left^dagger . m . right
cplx alpha_sandwich(const Spinor& left, const AlphaMatrix& m, const Spinor& right);

BeatComponent beat_parameters(const MomentumCell& cell, Axis axis,
                              const PhysicalConstants& k = PhysicalConstants::cgs());

// Drift velocity sum_sigma sigma (p_axis c^2 / W) sum_k (|a_k|^2 - |b_k|^2).
double mean_velocity(const BeatEnsemble& ens, Axis axis,
                     const PhysicalConstants& k = PhysicalConstants::cgs());

// <x>(t) = <v> t + sum_sigma sigma (h c / 4 pi W) A cos->sin quadrature term.
// Times must be ascending.
std::vector<double> expected_position_series(const BeatEnsemble& ens, Axis axis,
                                             std::span<const double> times_s,
                                             const PhysicalConstants& k = PhysicalConstants::cgs());

// <v>(t) = <v> + sum_sigma sigma c A cos(w t + phi).
std::vector<double> expected_velocity_series(const BeatEnsemble& ens, Axis axis,
                                             std::span<const double> times_s,
                                             const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace zbw
