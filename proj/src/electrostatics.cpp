#include "zbw/electrostatics.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include <fmt/format.h>

namespace zbw {

double shell_self_energy(double r0_cm, double q_statc) {
    require(r0_cm > 0.0, fmt::format("r0 > 0 (got {:.6e} cm)", r0_cm));
    return q_statc * q_statc / (2.0 * r0_cm);
}

namespace {

// Row-block size for the deterministic pairwise reduction. Each block's
// partial sum is accumulated independently and the partials are added in
// block order, so the result is bitwise independent of the thread count.
constexpr std::size_t kRowBlock = 256;

}  // namespace

double pairwise_energy(std::span<const Vec3> positions_cm,
                       std::span<const double> charges_statc, int threads) {
    require(positions_cm.size() == charges_statc.size(),
            "positions and charges have equal length");
    const std::size_t n = positions_cm.size();
    if (n < 2) return 0.0;

    const std::size_t n_blocks = (n + kRowBlock - 1) / kRowBlock;
    std::vector<double> partial(n_blocks, 0.0);
    std::atomic<std::size_t> next_block{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t block = next_block.fetch_add(1);
            if (block >= n_blocks) break;
            const std::size_t row_begin = block * kRowBlock;
            const std::size_t row_end = std::min(row_begin + kRowBlock, n);
            double acc = 0.0;
            for (std::size_t i = row_begin; i < row_end; ++i) {
                const Vec3 pi = positions_cm[i];
                const double qi = charges_statc[i];
                double row = 0.0;
                for (std::size_t j = i + 1; j < n; ++j) {
                    const Vec3 d = positions_cm[j] - pi;
                    const double r = std::sqrt(d.norm2());
                    row += charges_statc[j] / r;
                }
                acc += qi * row;
            }
            partial[block] = acc;
        }
    };

    const int n_workers =
        static_cast<int>(std::min<std::size_t>(resolve_threads(threads), n_blocks));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

SelfEnergyReport pairwise_self_energy(const DensityGrid& grid, int threads,
                                      const PhysicalConstants& k) {
    grid.validate();
    const auto cells = grid.occupied();
    std::vector<Vec3> pos;
    std::vector<double> q;
    pos.reserve(cells.size());
    q.reserve(cells.size());
    for (const auto& cell : cells) {
        pos.push_back(cell.center);
        q.push_back(cell.q);
    }
    SelfEnergyReport rep;
    rep.method = "pairwise";
    rep.n_cells = cells.size();
    rep.spacing_cm = grid.spec.spacing;
    rep.w_erg = pairwise_energy(pos, q, threads);
    rep.w_ev = k.to_ev(rep.w_erg);
    if (cells.size() < 2)
        rep.note = "resolution-limited: all charge in one cell, "
                   "interaction energy vanishes";
    return rep;
}

SelfEnergyReport shell_self_energy_report(double r0_cm, double q_statc,
                                          const PhysicalConstants& k) {
    SelfEnergyReport rep;
    rep.method = "analytic";
    rep.w_erg = shell_self_energy(r0_cm, q_statc);
    rep.w_ev = k.to_ev(rep.w_erg);
    return rep;
}

std::vector<ConvergencePoint> convergence_study(
    const std::function<DensityGrid(double)>& generator,
    std::span<const double> spacings_cm, int threads,
    const PhysicalConstants& k) {
    require(spacings_cm.size() >= 2, "at least two spacings");
    for (std::size_t i = 0; i < spacings_cm.size(); ++i) {
        require(spacings_cm[i] > 0.0,
                fmt::format("spacing > 0 (got {:.6e} cm)", spacings_cm[i]));
        if (i > 0)
            require(spacings_cm[i] < spacings_cm[i - 1],
                    "spacings strictly decreasing");
    }
    std::vector<ConvergencePoint> out;
    out.reserve(spacings_cm.size());
    for (double spacing : spacings_cm) {
        const DensityGrid grid = generator(spacing);
        const SelfEnergyReport rep = pairwise_self_energy(grid, threads, k);
        ConvergencePoint pt;
        pt.spacing_cm = spacing;
        pt.w_erg = rep.w_erg;
        pt.rel_change =
            out.empty()
                ? std::numeric_limits<double>::quiet_NaN()
                : std::abs(pt.w_erg - out.back().w_erg) / std::abs(out.back().w_erg);
        out.push_back(pt);
    }
    return out;
}

}  // namespace zbw
