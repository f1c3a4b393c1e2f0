#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "zbw/constants.hpp"
#include "zbw/util.hpp"

using namespace zbw;

namespace {
const PhysicalConstants& K = PhysicalConstants::cgs();

bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}
}  // namespace

TEST_CASE("constants table is self-consistent") {
    CHECK(close(K.alpha(), 7.297349559532e-3, 1e-11));
    CHECK(close(K.rest_energy(K.m_e), 8.186735908918e-7, 1e-11));
    CHECK(close(K.to_ev(K.rest_energy(K.m_e)), 5.109747911544e5, 1e-11));
    CHECK(K.to_erg(K.to_ev(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("electron scales match their defining combinations") {
    const ElectronScales s = electron_scales(K.m_e);
    CHECK(close(s.lambda_C, 2.426416094937e-10, 1e-11));
    CHECK(close(s.T_Z, 8.093665257703e-21, 1e-11));
    CHECK(close(s.r_classical, 2.818062106397e-13, 1e-11));
    CHECK(close(s.mu_B, 9.274405590017e-21, 1e-11));
    // rounded figures often quoted for these scales
    CHECK(close(s.T_Z, 8.1e-21, 1e-2));
    CHECK(close(s.r_classical, 2.8e-13, 1e-2));
}

TEST_CASE("electron scales are exactly degree -1 in the mass") {
    const ElectronScales s1 = electron_scales(K.m_e);
    const ElectronScales s2 = electron_scales(2.0 * K.m_e);
    CHECK(s2.lambda_C == 0.5 * s1.lambda_C);
    CHECK(s2.T_Z == 0.5 * s1.T_Z);
    CHECK(s2.r_classical == 0.5 * s1.r_classical);
    CHECK(s2.mu_B == 0.5 * s1.mu_B);
}

TEST_CASE("classical radius over Compton wavelength is alpha / 2 pi") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 64; ++i) {
        const double mass = K.m_e * std::exp(4.0 * (uniform01(rng) - 0.5));
        const ElectronScales s = electron_scales(mass);
        CHECK(close(s.r_classical / s.lambda_C, K.alpha() / (2.0 * pi), 1e-12));
    }
    const ElectronScales s = electron_scales(K.m_e);
    CHECK(close(s.r_classical / s.lambda_C, 1.161409253868972e-3, 1e-11));
}

TEST_CASE("non-positive mass is rejected") {
    CHECK_THROWS_AS(electron_scales(0.0), std::domain_error);
    CHECK_THROWS_AS(electron_scales(-K.m_e), std::domain_error);
    CHECK_THROWS_AS(lambda_unit_for_mass(0.0), std::domain_error);
    CHECK_THROWS_AS(period_for_mass(-1.0), std::domain_error);
}

TEST_CASE("lambda_unit is the Compton wavelength over 4 pi") {
    CHECK(close(lambda_unit_for_mass(K.m_e), 1.93088058e-11, 1e-8));
    CHECK(close(lambda_unit_for_mass(K.m_e),
                electron_scales(K.m_e).lambda_C / (4.0 * pi), 1e-14));
    CHECK(close(period_for_mass(K.m_e), electron_scales(K.m_e).T_Z, 1e-14));
}

TEST_CASE("moment from spin: magnitude and direction") {
    const double hbar = K.h / (2.0 * pi);
    const ElectronScales s = electron_scales(K.m_e);

    const Vec3 m_z = moment_from_spin({0.0, 0.0, hbar / 2.0});
    CHECK(close(m_z.norm(), s.mu_B, 1e-12));
    CHECK(m_z.z < 0.0);  // anti-parallel to the spin
    CHECK(m_z.x == 0.0);
    CHECK(m_z.y == 0.0);

    const Vec3 m_x = moment_from_spin({hbar / 2.0, 0.0, 0.0});
    CHECK(close(-m_x.x, s.mu_B, 1e-12));

    const Vec3 m_0 = moment_from_spin({0.0, 0.0, 0.0});
    CHECK(m_0.norm() == 0.0);
}

TEST_CASE("bound-state moment factor") {
    CHECK(moment_bound_state(0.0) == 1.0);
    // hydrogen: five-decimal value 0.99998
    const double z1 = moment_bound_state(1.0);
    CHECK(close(z1, 0.999982249326821, 1e-12));
    CHECK(std::abs(z1 - 0.99998) < 5e-6);
    // the branch point alpha Z = 1 gives exactly 1/3
    CHECK(moment_bound_state(1.0 / K.alpha()) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(moment_bound_state(138.0), std::domain_error);
}

TEST_CASE("bound-state moment factor decreases monotonically in Z") {
    double prev = moment_bound_state(0.0);
    for (int z = 1; z <= 137; ++z) {
        const double cur = moment_bound_state(static_cast<double>(z));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("dipole moment of a moving magnetic moment") {
    const double mu = electron_scales(K.m_e).mu_B;

    SUBCASE("at rest or parallel motion gives zero") {
        CHECK(dipole_moment({0.0, 0.0, mu}, {0.0, 0.0, 0.0}).norm() == 0.0);
        CHECK(dipole_moment({0.0, 0.0, mu}, {0.0, 0.0, 0.1 * K.c}).norm() == 0.0);
    }
    SUBCASE("perpendicular motion at c gives magnitude mu") {
        const Vec3 p = dipole_moment({0.0, 0.0, mu}, {K.c, 0.0, 0.0});
        CHECK(close(p.norm(), mu, 1e-12));
        CHECK(close(p.y, mu, 1e-12));  // z cross x = y
        CHECK(p.x == 0.0);
        CHECK(p.z == 0.0);
    }
    SUBCASE("always orthogonal to both factors") {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const Vec3 m{mu * (2.0 * uniform01(rng) - 1.0),
                         mu * (2.0 * uniform01(rng) - 1.0),
                         mu * (2.0 * uniform01(rng) - 1.0)};
            const Vec3 v{K.c * (2.0 * uniform01(rng) - 1.0) * 0.5,
                         K.c * (2.0 * uniform01(rng) - 1.0) * 0.5,
                         K.c * (2.0 * uniform01(rng) - 1.0) * 0.5};
            const Vec3 p = dipole_moment(m, v);
            const double scale = std::max(p.norm() * m.norm(), p.norm() * v.norm());
            if (scale == 0.0) continue;
            CHECK(std::abs(p.dot(m)) <= 1e-12 * p.norm() * m.norm());
            CHECK(std::abs(p.dot(v)) <= 1e-12 * p.norm() * v.norm());
        }
    }
    SUBCASE("superluminal velocity is rejected") {
        CHECK_THROWS_AS(dipole_moment({0.0, 0.0, mu}, {1.001 * K.c, 0.0, 0.0}),
                        std::domain_error);
    }
}

TEST_CASE("uncertainty budget") {
    // 1e-7 eV resolution: the clock is unresolvable by ~5e12 periods
    const UncertaintyBudget b = uncertainty_budget(K.to_erg(1e-7));
    CHECK(close(b.dw_over_rest, 1.957044e-13, 1e-6));
    CHECK(close(b.dt_over_tz, 5.109748e12, 1e-6));
    CHECK(b.dt_over_tz >= 5e12);

    // resolving the rest energy itself resolves the period
    const UncertaintyBudget r = uncertainty_budget(K.rest_energy(K.m_e));
    CHECK(r.dw_over_rest == 1.0);
    CHECK(r.dt_over_tz == 1.0);

    const UncertaintyBudget q = uncertainty_budget(K.to_erg(0.25e6));
    CHECK(close(q.dt_over_tz, 2.043899, 1e-6));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const double dw = std::exp(30.0 * (uniform01(rng) - 0.5)) * 1e-9;
        const UncertaintyBudget u = uncertainty_budget(dw);
        CHECK(close(u.dw_over_rest * u.dt_over_tz, 1.0, 1e-12));
    }

    CHECK_THROWS_AS(uncertainty_budget(0.0), std::domain_error);
    CHECK_THROWS_AS(uncertainty_budget(-1.0), std::domain_error);
}

TEST_CASE("collision time is the light-crossing time") {
    CHECK(close(collision_time(1e-16), 3.335646e-27, 1e-6));
    // consistent with the coarse 3e-27 s estimate for a 1e-16 cm region
    CHECK(collision_time(1e-16) / 3e-27 > 0.9);
    CHECK(collision_time(1e-16) / 3e-27 < 1.2);
    CHECK(collision_time(K.c * 1.0) == 1.0);
    CHECK(close(collision_time(electron_scales(K.m_e).lambda_C),
                electron_scales(K.m_e).T_Z, 1e-12));
    CHECK_THROWS_AS(collision_time(-1.0), std::domain_error);
}

TEST_CASE("higgs coupling") {
    const double vev = 246e9;  // eV
    CHECK(close(higgs_coupling(K.m_e, vev), 2.937510e-6, 1e-6));
    CHECK(close(higgs_coupling(K.m_e, vev), 2.94e-6, 1e-3));
    // exactly linear in the mass
    CHECK(higgs_coupling(2.0 * K.m_e, vev) == 2.0 * higgs_coupling(K.m_e, vev));
    // vanishes with the mass
    CHECK(higgs_coupling(1e-60, vev) < 1e-30);
}

TEST_CASE("constants table validation rejects corrupt values") {
    PhysicalConstants bad = K;
    bad.e = -bad.e;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
    bad = K;
    bad.h = 2.0 * bad.h;  // alpha falls outside its window
    CHECK_THROWS_AS(bad.validate(), std::domain_error);
}
