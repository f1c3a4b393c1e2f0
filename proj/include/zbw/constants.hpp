#pragma once

#include "zbw/util.hpp"
#include "zbw/vec3.hpp"

namespace zbw {

// Gaussian CGS throughout: statC, erg, cm, s, g. Energies travel internally
// in erg; the eV conversion is applied only at I/O boundaries.
struct PhysicalConstants {
    double e = 4.80320e-10;         // elementary charge [statC]
    double h = 6.62607e-27;         // Planck constant [erg s]
    double c = 2.99792e10;          // speed of light [cm/s]
    double m_e = 9.109e-28;         // electron rest mass [g]
    double erg_per_ev = 1.60218e-12;  // 1 eV in erg

    double alpha() const { return 2.0 * pi * e * e / (h * c); }
    double rest_energy(double mass_g) const { return mass_g * c * c; }
    double to_ev(double energy_erg) const { return energy_erg / erg_per_ev; }
    double to_erg(double energy_ev) const { return energy_ev * erg_per_ev; }

    void validate() const;

    // Shared validated instance with the table values above.
    static const PhysicalConstants& cgs();
};

// Characteristic electron scales for a given rest mass.
struct ElectronScales {
    double lambda_C;     // Compton wavelength h/mc [cm]
    double T_Z;          // internal period h/mc^2 [s]
    double r_classical;  // classical radius e^2/mc^2 [cm]
    double mu_B;         // Bohr magneton eh/4pi mc [erg/G]
};

ElectronScales electron_scales(double mass_g,
                               const PhysicalConstants& k = PhysicalConstants::cgs());

// Oscillation length unit lambda_C/4pi for a given rest mass.
double lambda_unit_for_mass(double mass_g,
                            const PhysicalConstants& k = PhysicalConstants::cgs());

// Internal period h/mc^2 for a given rest mass.
double period_for_mass(double mass_g,
                       const PhysicalConstants& k = PhysicalConstants::cgs());

// Magnetic moment M = -(e/mc) S from a spin vector in erg*s.
Vec3 moment_from_spin(const Vec3& spin_erg_s,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

// Bound-state moment reduction factor (1 + 2*sqrt(1 - (alpha Z)^2))/3.
double moment_bound_state(double z_atomic,
                          const PhysicalConstants& k = PhysicalConstants::cgs());

// Electric dipole moment P = M x v/c of a moving magnetic moment.
Vec3 dipole_moment(const Vec3& moment, const Vec3& velocity_cm_s,
                   const PhysicalConstants& k = PhysicalConstants::cgs());

// Energy/time complementarity: how well the internal clock can be resolved.
struct UncertaintyBudget {
    double dw_over_rest;  // delta_w / m_e c^2
    double dt_over_tz;    // implied lower bound on delta_t / T_Z
};

UncertaintyBudget uncertainty_budget(double delta_w_erg,
                                     const PhysicalConstants& k = PhysicalConstants::cgs());

// Light-crossing time of a region of the given size.
double collision_time(double size_cm,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

// Yukawa coupling g = sqrt(2) * (m c^2 in eV) / vev_ev.
double higgs_coupling(double mass_g, double vev_ev,
                      const PhysicalConstants& k = PhysicalConstants::cgs());

}  // namespace zbw
