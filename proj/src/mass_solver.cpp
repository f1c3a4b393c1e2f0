#include "zbw/mass_solver.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace zbw {

void GeometrySpec::validate() const {
    require(!modes.empty(), "geometry has at least one mode");
    require(cells_per_lambda >= 2,
            fmt::format("cells_per_lambda >= 2 (got {})", cells_per_lambda));
    require(n_samples >= 1, "n_samples >= 1");
}

DensityGrid geometry_density(double mu_g, const GeometrySpec& geom, int threads,
                             const PhysicalConstants& k) {
    geom.validate();
    const ModeEnsemble ens = mode_ensemble_for_mass(geom.modes, mu_g, k);
    const double leff = ens.lambda_eff();
    const double spacing = leff / geom.cells_per_lambda;
    // Side count depends only on cells_per_lambda, so rescaling mu rescales
    // the grid geometry without changing which cell any sample lands in.
    int n_side =
        static_cast<int>(std::ceil(2.0 * std::sqrt(3.0) * geom.cells_per_lambda)) + 2;
    if (n_side % 2 != 0) ++n_side;
    const GridSpec grid = GridSpec::centered_cube(n_side, spacing);
    return sample_time_marginal(ens, geom.n_samples, grid, geom.seed, threads, k);
}

double w_z(double mu_g, const GeometrySpec& geom, int threads,
           const PhysicalConstants& k) {
    const DensityGrid grid = geometry_density(mu_g, geom, threads, k);
    return pairwise_self_energy(grid, threads, k).w_erg;
}

RatioEstimate dimensionless_ratio(const GeometrySpec& geom, int threads,
                                  const PhysicalConstants& k) {
    const double mus[3] = {k.m_e / 10.0, k.m_e, 10.0 * k.m_e};
    double rho[3];
    for (int i = 0; i < 3; ++i)
        rho[i] = w_z(mus[i], geom, threads, k) / k.rest_energy(mus[i]);
    RatioEstimate est;
    est.ratio = rho[1];
    const auto [lo, hi] = std::minmax({rho[0], rho[1], rho[2]});
    const double scale = std::max({std::abs(rho[0]), std::abs(rho[1]), std::abs(rho[2])});
    est.spread = scale > 0.0 ? (hi - lo) / scale : 0.0;
    return est;
}

const char* to_string(FixedPointKind kind) {
    switch (kind) {
        case FixedPointKind::degenerate: return "degenerate";
        case FixedPointKind::roots: return "roots";
        case FixedPointKind::none: return "none";
    }
    return "unknown";
}

FixedPointVerdict solve_fixed_point(const std::function<double(double)>& w_of_mu,
                                    double mu_min_g, double mu_max_g,
                                    double tolerance, const PhysicalConstants& k) {
    require(mu_min_g > 0.0, fmt::format("mu_min > 0 (got {:.6e} g)", mu_min_g));
    require(mu_max_g > mu_min_g,
            fmt::format("mu_max > mu_min (got [{:.6e}, {:.6e}] g)", mu_min_g, mu_max_g));
    require(tolerance > 0.0, fmt::format("tolerance > 0 (got {:.6e})", tolerance));

    auto rho = [&](double mu) { return w_of_mu(mu) / k.rest_energy(mu); };

    FixedPointVerdict verdict;
    const double mu_mid = std::sqrt(mu_min_g * mu_max_g);
    const double probe[3] = {rho(mu_min_g), rho(mu_mid), rho(mu_max_g)};
    verdict.ratio = probe[1];
    const auto [plo, phi] = std::minmax({probe[0], probe[1], probe[2]});
    const double pscale =
        std::max({std::abs(probe[0]), std::abs(probe[1]), std::abs(probe[2])});
    verdict.homogeneity_defect = pscale > 0.0 ? (phi - plo) / pscale : 0.0;

    // A degree-1 homogeneous w has constant ratio: the fixed-point equation
    // then fixes no scale (it holds for every mu or for none).
    if (verdict.homogeneity_defect < tolerance) {
        verdict.kind = FixedPointKind::degenerate;
        return verdict;
    }

    const double decades = std::log10(mu_max_g / mu_min_g);
    const int n_pts = std::max(3, static_cast<int>(std::ceil(64.0 * decades)) + 1);
    std::vector<double> mu(n_pts), f(n_pts);
    const double log_min = std::log(mu_min_g);
    const double log_step = (std::log(mu_max_g) - log_min) / (n_pts - 1);
    for (int i = 0; i < n_pts; ++i) {
        mu[i] = std::exp(log_min + i * log_step);
        f[i] = w_of_mu(mu[i]) - k.rest_energy(mu[i]);
    }

    auto push_root = [&](double mu_root) {
        const double rest = k.rest_energy(mu_root);
        verdict.roots.push_back(
            {mu_root, std::abs(w_of_mu(mu_root) - rest) / rest});
    };

    for (int i = 0; i < n_pts; ++i) {
        if (f[i] == 0.0) {
            push_root(mu[i]);
            continue;
        }
        if (i + 1 >= n_pts || f[i + 1] == 0.0) continue;
        if ((f[i] > 0.0) == (f[i + 1] > 0.0)) continue;
        double a = mu[i], b = mu[i + 1];
        double fa = f[i];
        for (int iter = 0; iter < 200 && (b - a) > tolerance * a; ++iter) {
            const double m = 0.5 * (a + b);
            const double fm = w_of_mu(m) - k.rest_energy(m);
            if (fm == 0.0) {
                a = b = m;
                break;
            }
            if ((fm > 0.0) == (fa > 0.0)) {
                a = m;
                fa = fm;
            } else {
                b = m;
            }
        }
        push_root(0.5 * (a + b));
    }

    std::sort(verdict.roots.begin(), verdict.roots.end(),
              [](const FixedPointRoot& a, const FixedPointRoot& b) {
                  return a.mu_g < b.mu_g;
              });
    verdict.kind =
        verdict.roots.empty() ? FixedPointKind::none : FixedPointKind::roots;
    return verdict;
}

FixedPointVerdict solve_fixed_point(const GeometrySpec& geom, double mu_min_g,
                                    double mu_max_g, double tolerance, int threads,
                                    const PhysicalConstants& k) {
    geom.validate();
    return solve_fixed_point(
        [&](double mu) { return w_z(mu, geom, threads, k); }, mu_min_g, mu_max_g,
        tolerance, k);
}

FlavourScan flavour_scan(const std::function<double(double)>& w_of_mu,
                         double mu_min_g, double mu_max_g, double tolerance,
                         const PhysicalConstants& k) {
    const FixedPointVerdict verdict =
        solve_fixed_point(w_of_mu, mu_min_g, mu_max_g, tolerance, k);
    FlavourScan scan;
    scan.degenerate = verdict.kind == FixedPointKind::degenerate;
    scan.roots = verdict.roots;
    if (scan.degenerate)
        scan.note = fmt::format(
            "functional is homogeneous of degree 1 (ratio {:.6e}): the "
            "equation fixes no mass scale, so no discrete flavour spectrum",
            verdict.ratio);
    else if (scan.roots.empty())
        scan.note = "no fixed point in range";
    else
        scan.note = fmt::format("{} discrete fixed point(s) in range",
                                scan.roots.size());
    return scan;
}

double shell_ratio_analytic(const PhysicalConstants& k) {
    // w = e^2 / 2 Lambda with Lambda = h / 4 pi mu c; the trial mass cancels.
    return 2.0 * pi * k.e * k.e / (k.h * k.c);
}

double shell_ratio_numeric(int cells_per_radius, int threads,
                           const PhysicalConstants& k) {
    require(cells_per_radius >= 2,
            fmt::format("cells_per_radius >= 2 (got {})", cells_per_radius));
    const double mu = k.m_e;
    const double r0 = lambda_unit_for_mass(mu, k);
    const double spacing = r0 / cells_per_radius;
    const GridSpec grid =
        GridSpec::centered_cube(2 * (cells_per_radius + 2), spacing);
    const DensityGrid shell = shell_surface_grid(r0, grid, -k.e);
    return pairwise_self_energy(shell, threads, k).w_erg / k.rest_energy(mu);
}

std::function<double(double)> polynomial_functional(std::span<const double> coeffs) {
    require(!coeffs.empty(), "at least one coefficient");
    std::vector<double> c(coeffs.begin(), coeffs.end());
    return [c](double mu) {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * mu + *it;
        return acc;
    };
}

}  // namespace zbw
