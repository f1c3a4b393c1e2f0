#include "zbw/kinematics.hpp"

#include <cmath>

#include <fmt/format.h>

namespace zbw {

void ModeEnsemble::validate() const {
    require(!modes.empty(), "ensemble is non-empty");
    require(lambda_unit > 0.0,
            fmt::format("lambda_unit > 0 (got {:.6e} cm)", lambda_unit));
    double total_amp = 0.0;
    for (const auto& m : modes) {
        require(m.weight > 0.0, fmt::format("sigma > 0 (got {:.6e})", m.weight));
        for (int i = 0; i < 3; ++i) {
            require(m.amplitude[i] >= 0.0,
                    fmt::format("A_i >= 0 (got {:.6e})", m.amplitude[i]));
            total_amp += m.amplitude[i];
        }
    }
    require(total_amp > 0.0, "ensemble has nonzero amplitude");
}

double ModeEnsemble::omega(const PhysicalConstants& k) const {
    require(lambda_unit > 0.0,
            fmt::format("lambda_unit > 0 (got {:.6e} cm)", lambda_unit));
    return k.c / lambda_unit;  // = 4 pi / T_Z
}

double ModeEnsemble::period(const PhysicalConstants& k) const {
    require(lambda_unit > 0.0,
            fmt::format("lambda_unit > 0 (got {:.6e} cm)", lambda_unit));
    return 4.0 * pi * lambda_unit / k.c;
}

double ModeEnsemble::lambda_eff() const {
    double acc = 0.0;
    for (const auto& m : modes) {
        const double a2 = m.amplitude[0] * m.amplitude[0] +
                          m.amplitude[1] * m.amplitude[1] +
                          m.amplitude[2] * m.amplitude[2];
        acc += m.weight * std::sqrt(a2);
    }
    return lambda_unit * acc;
}

Vec3 position_at_phase(const ModeEnsemble& ens, double psi) {
    double comp[3] = {0.0, 0.0, 0.0};
    for (const auto& m : ens.modes)
        for (int i = 0; i < 3; ++i)
            comp[i] += m.weight * m.amplitude[i] * std::sin(psi + m.phase[i]);
    return Vec3{comp[0], comp[1], comp[2]} * ens.lambda_unit;
}

Vec3 position(const ModeEnsemble& ens, double t_s, const PhysicalConstants& k) {
    return position_at_phase(ens, ens.omega(k) * t_s);
}

double electron_t_z(const PhysicalConstants& k) {
    return k.h / (k.m_e * k.c * k.c);
}

namespace {

double phase_of(double t_s, double t_z_s) {
    require(t_z_s > 0.0, fmt::format("T_Z > 0 (got {:.6e} s)", t_z_s));
    return 4.0 * pi * t_s / t_z_s;
}

void check_lambda(double lambda_cm) {
    require(lambda_cm > 0.0, fmt::format("lambda > 0 (got {:.6e} cm)", lambda_cm));
}

}  // namespace

double linear_trajectory(double lambda_cm, double t_s, double t_z_s) {
    check_lambda(lambda_cm);
    return std::sqrt(3.0) * lambda_cm * std::sin(phase_of(t_s, t_z_s));
}

Vec3 CylinderPoint::cartesian() const {
    return {r * std::cos(theta), r * std::sin(theta), z};
}

CylinderPoint cylinder_trajectory(double lambda_cm, double t_s, double t_z_s) {
    check_lambda(lambda_cm);
    const double psi = phase_of(t_s, t_z_s);
    return {lambda_cm, psi, lambda_cm * std::cos(psi)};
}

double path_speed_cylinder(double lambda_cm, double t_s, double t_z_s) {
    check_lambda(lambda_cm);
    const double z = lambda_cm * std::cos(phase_of(t_s, t_z_s));
    return (4.0 * pi / t_z_s) * std::sqrt(2.0 * lambda_cm * lambda_cm - z * z);
}

OscillationMode linear_diagonal_mode(double amplitude, double weight) {
    OscillationMode m;
    m.amplitude = {amplitude, amplitude, amplitude};
    m.phase = {0.0, 0.0, 0.0};
    m.weight = weight;
    return m;
}

OscillationMode cylinder_mode(double amplitude, double weight) {
    OscillationMode m;
    m.amplitude = {amplitude, amplitude, amplitude};
    m.phase = {pi / 2.0, 0.0, pi / 2.0};
    m.weight = weight;
    return m;
}

ModeEnsemble mode_ensemble_for_mass(std::vector<OscillationMode> modes, double mass_g,
                                    const PhysicalConstants& k) {
    ModeEnsemble ens{std::move(modes), lambda_unit_for_mass(mass_g, k)};
    ens.validate();
    return ens;
}

}  // namespace zbw
