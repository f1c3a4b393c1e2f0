#include "zbw/constants.hpp"

#include <cmath>

#include <fmt/format.h>

namespace zbw {

void PhysicalConstants::validate() const {
    require(e > 0.0, "e > 0");
    require(h > 0.0, "h > 0");
    require(c > 0.0, "c > 0");
    require(m_e > 0.0, "m_e > 0");
    require(erg_per_ev > 0.0, "erg_per_ev > 0");
    const double a = alpha();
    require(a > 7.29e-3 && a < 7.31e-3,
            fmt::format("alpha within (7.29e-3, 7.31e-3) (got {:.6e})", a));
}

const PhysicalConstants& PhysicalConstants::cgs() {
    static const PhysicalConstants k = [] {
        PhysicalConstants table;
        table.validate();
        return table;
    }();
    return k;
}

ElectronScales electron_scales(double mass_g, const PhysicalConstants& k) {
    require(mass_g > 0.0, fmt::format("mass > 0 (got {:.6e} g)", mass_g));
    ElectronScales s;
    s.lambda_C = k.h / (mass_g * k.c);
    s.T_Z = k.h / (mass_g * k.c * k.c);
    s.r_classical = k.e * k.e / (mass_g * k.c * k.c);
    s.mu_B = k.e * k.h / (4.0 * pi * mass_g * k.c);
    return s;
}

double lambda_unit_for_mass(double mass_g, const PhysicalConstants& k) {
    require(mass_g > 0.0, fmt::format("mass > 0 (got {:.6e} g)", mass_g));
    return k.h / (4.0 * pi * mass_g * k.c);
}

double period_for_mass(double mass_g, const PhysicalConstants& k) {
    require(mass_g > 0.0, fmt::format("mass > 0 (got {:.6e} g)", mass_g));
    return k.h / (mass_g * k.c * k.c);
}

Vec3 moment_from_spin(const Vec3& spin_erg_s, const PhysicalConstants& k) {
    return spin_erg_s * (-k.e / (k.m_e * k.c));
}

double moment_bound_state(double z_atomic, const PhysicalConstants& k) {
    const double az = k.alpha() * z_atomic;
    double u = 1.0 - az * az;
    // Z = 1/alpha sits exactly on the branch point; forgive rounding there.
    if (u < 0.0 && u > -1e-12) u = 0.0;
    require(u >= 0.0, fmt::format("alpha*Z <= 1 (got alpha*Z = {:.12g})", az));
    return (1.0 + 2.0 * std::sqrt(u)) / 3.0;
}

Vec3 dipole_moment(const Vec3& moment, const Vec3& velocity_cm_s,
                   const PhysicalConstants& k) {
    const double beta = velocity_cm_s.norm() / k.c;
    require(beta <= 1.0 + 1e-12,
            fmt::format("|v| <= c (got |v|/c = {:.12g})", beta));
    return moment.cross(velocity_cm_s / k.c);
}

UncertaintyBudget uncertainty_budget(double delta_w_erg, const PhysicalConstants& k) {
    require(delta_w_erg > 0.0,
            fmt::format("delta_w > 0 (got {:.6e} erg)", delta_w_erg));
    UncertaintyBudget b;
    b.dw_over_rest = delta_w_erg / k.rest_energy(k.m_e);
    b.dt_over_tz = 1.0 / b.dw_over_rest;
    return b;
}

double collision_time(double size_cm, const PhysicalConstants& k) {
    require(size_cm >= 0.0, fmt::format("size >= 0 (got {:.6e} cm)", size_cm));
    return size_cm / k.c;
}

double higgs_coupling(double mass_g, double vev_ev, const PhysicalConstants& k) {
    return std::sqrt(2.0) * k.to_ev(k.rest_energy(mass_g)) / vev_ev;
}

}  // namespace zbw
