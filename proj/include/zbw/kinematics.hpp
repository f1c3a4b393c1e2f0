#pragma once

#include <array>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/vec3.hpp"

namespace zbw {

// One term of the rest-frame oscillation: per-axis amplitude and phase plus
// a momentum-cell weight. Amplitudes are in units of lambda_unit.
struct OscillationMode {
    std::array<double, 3> amplitude{0.0, 0.0, 0.0};  // A_i >= 0
    std::array<double, 3> phase{0.0, 0.0, 0.0};      // phi_i [rad]
    double weight = 1.0;                             // sigma > 0
};

struct ModeEnsemble {
    std::vector<OscillationMode> modes;
    double lambda_unit;  // lambda_C / 4 pi for the mass in play [cm]

    void validate() const;
    double omega(const PhysicalConstants& k = PhysicalConstants::cgs()) const;
    double period(const PhysicalConstants& k = PhysicalConstants::cgs()) const;
    // lambda_unit * sum_sigma sigma |A|: the oscillation radius scale.
    double lambda_eff() const;
};

// Phase-parametrized position, psi = 4 pi t / T_Z. Using the phase directly
// keeps sampled geometry exactly invariant under rescaling of lambda_unit.
Vec3 position_at_phase(const ModeEnsemble& ens, double psi);

Vec3 position(const ModeEnsemble& ens, double t_s,
              const PhysicalConstants& k = PhysicalConstants::cgs());

// Internal period of the electron-mass oscillator, the default clock below.
double electron_t_z(const PhysicalConstants& k = PhysicalConstants::cgs());

// Canonical closed-form trajectories with oscillation radius Lambda = lambda_cm.

// Straight-line oscillation along the cube diagonal: signed arc coordinate
// s(t) = sqrt(3) Lambda sin(4 pi t / T_Z).
double linear_trajectory(double lambda_cm, double t_s, double t_z_s = electron_t_z());

struct CylinderPoint {
    double r;      // cylindrical radius [cm]
    double theta;  // azimuth [rad], unwrapped
    double z;      // height [cm]
    Vec3 cartesian() const;
};

// Closed loop on a cylinder: r = Lambda, theta = 4 pi t / T_Z,
// z = Lambda cos(4 pi t / T_Z). Closes after T_Z / 2.
CylinderPoint cylinder_trajectory(double lambda_cm, double t_s,
                                  double t_z_s = electron_t_z());

// |ds/dt| along the cylinder loop: (4 pi / T_Z) sqrt(2 Lambda^2 - z^2).
double path_speed_cylinder(double lambda_cm, double t_s, double t_z_s = electron_t_z());

// Canonical single-mode shapes matching the closed forms above.
OscillationMode linear_diagonal_mode(double amplitude = 1.0, double weight = 1.0);
OscillationMode cylinder_mode(double amplitude = 1.0, double weight = 1.0);

ModeEnsemble mode_ensemble_for_mass(std::vector<OscillationMode> modes, double mass_g,
                                    const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace zbw
