#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "zbw/constants.hpp"
#include "zbw/density.hpp"
#include "zbw/electrostatics.hpp"

using namespace zbw;

namespace {

const PhysicalConstants& K = PhysicalConstants::cgs();

bool close(double a, double b, double rel) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

// A small deterministic cloud for invariance checks.
DensityGrid random_cloud(std::uint64_t seed, int n_cells) {
    GridSpec spec = GridSpec::centered_cube(16, 0.5);
    DensityGrid g;
    g.spec = spec;
    std::mt19937_64 rng(seed);
    double sum = 0.0;
    while (static_cast<int>(g.cells.size()) < n_cells) {
        const std::uint64_t idx = rng() % spec.n_total();
        if (g.cells.count(idx)) continue;
        const double q = -uniform01(rng) - 0.1;
        g.cells[idx] = q;
        sum += q;
    }
    g.total_charge = sum;
    g.validate();
    return g;
}

}  // namespace

TEST_CASE("analytic shell energy identities") {
    // W = q^2 / (2 r0)
    CHECK(shell_self_energy(3.0, 2.0) == 4.0 / 6.0);
    // a shell of one electron charge at half the classical radius stores
    // exactly the electron rest energy
    const double r_half = electron_scales(K.m_e, K).r_classical / 2.0;
    CHECK(close(shell_self_energy(r_half, K.e), K.rest_energy(K.m_e), 1e-12));
    // frozen spot value at r0 = 1e-13 cm
    CHECK(close(shell_self_energy(1e-13, K.e), 1.153537e-06, 1e-6));
    CHECK_THROWS_AS(shell_self_energy(0.0, K.e), std::domain_error);
    CHECK_THROWS_AS(shell_self_energy(-1.0, K.e), std::domain_error);
}

TEST_CASE("pairwise energy of simple configurations") {
    // two point charges: W = q1 q2 / d
    GridSpec spec = GridSpec::centered_cube(4, 1.0);
    DensityGrid g;
    g.spec = spec;
    g.cells[spec.linear_index(0, 0, 0)] = -2.0;
    g.cells[spec.linear_index(3, 0, 0)] = -3.0;
    g.total_charge = -5.0;
    const double d = 3.0;  // centers at x = -1.5 and +1.5
    const SelfEnergyReport rep = pairwise_self_energy(g, 1);
    CHECK(close(rep.w_erg, 6.0 / d, 1e-14));
    CHECK(rep.n_cells == 2);
    CHECK(rep.method == "pairwise");

    // a single cell has no pair interactions and says so
    DensityGrid lone;
    lone.spec = spec;
    lone.cells[0] = -1.0;
    lone.total_charge = -1.0;
    const SelfEnergyReport lone_rep = pairwise_self_energy(lone, 1);
    CHECK(lone_rep.w_erg == 0.0);
    CHECK(lone_rep.note.find("resolution-limited") != std::string::npos);
}

TEST_CASE("pairwise energy invariances") {
    const DensityGrid g = random_cloud(11, 40);
    const double w = pairwise_self_energy(g, 1).w_erg;

    SUBCASE("quadratic in overall charge") {
        DensityGrid scaled = g;
        for (auto& [idx, q] : scaled.cells) q *= 3.0;
        scaled.total_charge *= 3.0;
        CHECK(close(pairwise_self_energy(scaled, 1).w_erg, 9.0 * w, 1e-12));
    }

    SUBCASE("inverse-linear in length scale") {
        DensityGrid stretched = g;
        stretched.spec.spacing *= 4.0;
        stretched.spec.origin = 4.0 * g.spec.origin;
        CHECK(close(pairwise_self_energy(stretched, 1).w_erg, w / 4.0, 1e-12));
    }

    SUBCASE("translation invariance") {
        DensityGrid moved = g;
        moved.spec.origin = g.spec.origin + Vec3{10.0, -3.0, 7.5};
        CHECK(close(pairwise_self_energy(moved, 1).w_erg, w, 1e-10));
    }
}

TEST_CASE("pairwise energy is bitwise independent of thread count") {
    const DensityGrid g = random_cloud(23, 200);
    const double w1 = pairwise_self_energy(g, 1).w_erg;
    for (int threads : {2, 3, 7}) {
        CHECK(pairwise_self_energy(g, threads).w_erg == w1);
    }
    // and of repeated evaluation
    CHECK(pairwise_self_energy(g, 0).w_erg == w1);
}

TEST_CASE("deposited shell approaches the analytic energy from below") {
    const double r0 = 1.0;
    const double q = -K.e;
    const double exact = shell_self_energy(r0, q);

    auto numeric = [&](int cells_per_radius) {
        const double spacing = r0 / cells_per_radius;
        const GridSpec grid =
            GridSpec::centered_cube(2 * (cells_per_radius + 2), spacing);
        const DensityGrid shell = shell_surface_grid(r0, grid, q);
        return pairwise_self_energy(shell, 0).w_erg;
    };

    const double w8 = numeric(8);
    const double w16 = numeric(16);
    const double w32 = numeric(32);

    // smearing charge over cells only lowers the energy
    CHECK(w8 < exact);
    CHECK(w16 < exact);
    CHECK(w32 < exact);
    // and refining monotonically recovers it
    CHECK(w8 < w16);
    CHECK(w16 < w32);
    CHECK(close(w32, exact, 0.02));

    const SelfEnergyReport rep = shell_self_energy_report(r0, q);
    CHECK(rep.method == "analytic");
    CHECK(rep.w_erg == exact);
    CHECK(close(rep.w_ev, exact / K.erg_per_ev, 1e-14));
}

TEST_CASE("convergence study reports shrinking relative changes") {
    const double r0 = 1.0;
    const double q = -K.e;
    auto shell_at = [&](double spacing) {
        const int cells_per_radius = static_cast<int>(std::lround(r0 / spacing));
        const GridSpec grid =
            GridSpec::centered_cube(2 * (cells_per_radius + 2), spacing);
        return shell_surface_grid(r0, grid, q);
    };

    const std::vector<double> spacings = {r0 / 8, r0 / 16, r0 / 32};
    const auto rows = convergence_study(shell_at, spacings, 0);
    REQUIRE(rows.size() == 3);
    CHECK(std::isnan(rows[0].rel_change));
    CHECK(rows[1].rel_change > 0.0);
    CHECK(rows[2].rel_change > 0.0);
    CHECK(rows[2].rel_change < rows[1].rel_change);
    CHECK(rows[2].w_erg > rows[1].w_erg);
    CHECK(rows[0].spacing_cm == spacings[0]);

    // determinism: running it twice gives identical bits
    const auto again = convergence_study(shell_at, spacings, 0);
    for (size_t i = 0; i < rows.size(); ++i)
        CHECK(rows[i].w_erg == again[i].w_erg);

    CHECK_THROWS_AS(convergence_study(shell_at, std::vector<double>{0.1}, 0),
                    std::domain_error);
    // spacings must strictly shrink
    CHECK_THROWS_AS(convergence_study(shell_at, std::vector<double>{0.1, 0.2}, 0),
                    std::domain_error);
    CHECK_THROWS_AS(
        convergence_study(shell_at, std::vector<double>{0.2, -0.1}, 0),
        std::domain_error);
}
