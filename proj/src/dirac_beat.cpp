#include "zbw/dirac_beat.hpp"

#include <cmath>

#include <fmt/format.h>

namespace zbw {

MomentumCell MomentumCell::make(const Vec3& p, double sigma, const Spinor& a,
                                const Spinor& b, double mass_g,
                                const PhysicalConstants& k) {
    require(mass_g > 0.0, fmt::format("mass > 0 (got {:.6e} g)", mass_g));
    require(sigma > 0.0, fmt::format("sigma > 0 (got {:.6e})", sigma));
    const double rest = k.rest_energy(mass_g);
    const double pc = p.norm() * k.c;
    MomentumCell cell{p, sigma, a, b, std::sqrt(rest * rest + pc * pc)};
    return cell;
}

double BeatEnsemble::normalization() const {
    double total = 0.0;
    for (const auto& cell : cells) {
        double s = 0.0;
        for (int i = 0; i < 4; ++i) s += std::norm(cell.a[i]) + std::norm(cell.b[i]);
        total += cell.sigma * s;
    }
    return total;
}

void BeatEnsemble::normalize() {
    const double total = normalization();
    require(total > 0.0, "ensemble has nonzero amplitude");
    const double scale = 1.0 / std::sqrt(total);
    for (auto& cell : cells)
        for (int i = 0; i < 4; ++i) {
            cell.a[i] *= scale;
            cell.b[i] *= scale;
        }
}

void BeatEnsemble::validate() const {
    require(!cells.empty(), "ensemble is non-empty");
    require(mass_g > 0.0, fmt::format("mass > 0 (got {:.6e} g)", mass_g));
    const PhysicalConstants& k = PhysicalConstants::cgs();
    const double rest = mass_g * k.c * k.c;
    for (const auto& cell : cells) {
        require(cell.sigma > 0.0, fmt::format("sigma > 0 (got {:.6e})", cell.sigma));
        require(cell.W >= rest * (1.0 - 1e-12),
                fmt::format("W >= m c^2 (got W = {:.6e} erg)", cell.W));
    }
    const double total = normalization();
    require(std::abs(total - 1.0) < 1e-9,
            fmt::format("ensemble normalized to 1 (got {:.12g})", total));
}

BeatEnsemble BeatEnsemble::gaussian_ball(std::size_t n_cells, double p_scale_g_cm_s,
                                         std::uint64_t seed,
                                         const PhysicalConstants& k) {
    require(n_cells > 0, "n_cells >= 1");
    require(p_scale_g_cm_s >= 0.0,
            fmt::format("p_scale >= 0 (got {:.6e})", p_scale_g_cm_s));
    std::mt19937_64 rng(splitmix64(seed));
    // Hand-rolled Box-Muller so the ensemble is identical on every platform.
    auto gauss = [&rng]() {
        const double u1 = 1.0 - uniform01(rng);  // (0,1]
        const double u2 = uniform01(rng);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
    };
    auto amp = [&rng]() {
        return cplx(2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0);
    };
    BeatEnsemble ens;
    ens.mass_g = k.m_e;
    ens.cells.reserve(n_cells);
    const double sigma = 1.0 / static_cast<double>(n_cells);
    for (std::size_t i = 0; i < n_cells; ++i) {
        const Vec3 p{p_scale_g_cm_s * gauss(), p_scale_g_cm_s * gauss(),
                     p_scale_g_cm_s * gauss()};
        Spinor a, b;
        for (int j = 0; j < 4; ++j) a[j] = amp();
        for (int j = 0; j < 4; ++j) b[j] = amp();
        ens.cells.push_back(MomentumCell::make(p, sigma, a, b, ens.mass_g, k));
    }
    ens.normalize();
    return ens;
}

AlphaMatrix alpha_matrix(int axis) {
    require(axis >= 1 && axis <= 3, fmt::format("axis in {{1,2,3}} (got {})", axis));
    AlphaMatrix m{};  // zero-initialized
    const cplx i1(0.0, 1.0);
    switch (axis) {
        case 1:
            m[0][3] = m[1][2] = m[2][1] = m[3][0] = 1.0;
            break;
        case 2:
            m[0][3] = -i1;
            m[1][2] = i1;
            m[2][1] = -i1;
            m[3][0] = i1;
            break;
        case 3:
            m[0][2] = m[2][0] = 1.0;
            m[1][3] = m[3][1] = -1.0;
            break;
    }
    return m;
}

cplx alpha_sandwich(const Spinor& left, const AlphaMatrix& m, const Spinor& right) {
    cplx acc(0.0, 0.0);
    for (int i = 0; i < 4; ++i) {
        cplx row(0.0, 0.0);
        for (int j = 0; j < 4; ++j) row += m[i][j] * right[j];
        acc += std::conj(left[i]) * row;
    }
    return acc;
}

BeatComponent beat_parameters(const MomentumCell& cell, Axis axis,
                              const PhysicalConstants& k) {
    require(cell.W > 0.0, fmt::format("W > 0 (got {:.6e} erg)", cell.W));
    const AlphaMatrix m = alpha_matrix(static_cast<int>(axis) + 1);
    const cplx z = alpha_sandwich(cell.a, m, cell.b);
    BeatComponent out;
    out.axis = axis;
    // -2c Re(z e^{-iwt}) = 2c|z| cos(wt - arg z + pi) = c A cos(wt + phi)
    out.amplitude = 2.0 * std::abs(z);
    double phi = pi - std::atan2(z.imag(), z.real());
    if (phi > pi) phi -= 2.0 * pi;  // wrap into (-pi, pi]
    out.phase = phi;
    out.omega = 4.0 * pi * cell.W / k.h;
    return out;
}

double mean_velocity(const BeatEnsemble& ens, Axis axis, const PhysicalConstants& k) {
    const int i = static_cast<int>(axis);
    double v = 0.0;
    for (const auto& cell : ens.cells) {
        double occupancy = 0.0;
        for (int j = 0; j < 4; ++j)
            occupancy += std::norm(cell.a[j]) - std::norm(cell.b[j]);
        v += cell.sigma * (cell.p[i] * k.c * k.c / cell.W) * occupancy;
    }
    return v;
}

namespace {

void check_sorted(std::span<const double> times) {
    for (std::size_t i = 1; i < times.size(); ++i)
        require(times[i] >= times[i - 1], "times ascending");
}

struct CellTerm {
    double coeff;  // prefactor of the oscillatory term
    double omega;
    double phase;
};

}  // namespace

std::vector<double> expected_position_series(const BeatEnsemble& ens, Axis axis,
                                             std::span<const double> times_s,
                                             const PhysicalConstants& k) {
    ens.validate();
    check_sorted(times_s);
    const double vmean = mean_velocity(ens, axis, k);
    std::vector<CellTerm> terms;
    terms.reserve(ens.cells.size());
    for (const auto& cell : ens.cells) {
        const BeatComponent b = beat_parameters(cell, axis, k);
        // position amplitude (h c / 4 pi W) A; the beat integrates to a sine
        terms.push_back({cell.sigma * (k.h * k.c / (4.0 * pi * cell.W)) * b.amplitude,
                         b.omega, b.phase});
    }
    std::vector<double> out;
    out.reserve(times_s.size());
    for (double t : times_s) {
        double x = vmean * t;
        for (const auto& term : terms)
            x += term.coeff * std::sin(term.omega * t + term.phase);
        out.push_back(x);
    }
    return out;
}

std::vector<double> expected_velocity_series(const BeatEnsemble& ens, Axis axis,
                                             std::span<const double> times_s,
                                             const PhysicalConstants& k) {
    ens.validate();
    check_sorted(times_s);
    const double vmean = mean_velocity(ens, axis, k);
    std::vector<CellTerm> terms;
    terms.reserve(ens.cells.size());
    for (const auto& cell : ens.cells) {
        const BeatComponent b = beat_parameters(cell, axis, k);
        terms.push_back({cell.sigma * k.c * b.amplitude, b.omega, b.phase});
    }
    std::vector<double> out;
    out.reserve(times_s.size());
    for (double t : times_s) {
        double v = vmean;
        for (const auto& term : terms)
            v += term.coeff * std::cos(term.omega * t + term.phase);
        out.push_back(v);
    }
    return out;
}

}  // namespace zbw
