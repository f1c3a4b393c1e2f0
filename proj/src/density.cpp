#include "zbw/density.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include <fmt/format.h>

namespace zbw {

GridSpec GridSpec::centered_cube(int n_per_side, double spacing_cm) {
    require(n_per_side >= 1, fmt::format("n >= 1 (got {})", n_per_side));
    require(spacing_cm > 0.0, fmt::format("spacing > 0 (got {:.6e} cm)", spacing_cm));
    const double half = 0.5 * n_per_side * spacing_cm;
    GridSpec g;
    g.n = {n_per_side, n_per_side, n_per_side};
    g.origin = {-half, -half, -half};
    g.spacing = spacing_cm;
    return g;
}

void GridSpec::validate() const {
    for (int i = 0; i < 3; ++i)
        require(n[i] >= 1, fmt::format("n[{}] >= 1 (got {})", i, n[i]));
    require(spacing > 0.0, fmt::format("spacing > 0 (got {:.6e} cm)", spacing));
}

std::uint64_t GridSpec::n_total() const {
    return static_cast<std::uint64_t>(n[0]) * n[1] * n[2];
}

std::uint64_t GridSpec::linear_index(int ix, int iy, int iz) const {
    return (static_cast<std::uint64_t>(ix) * n[1] + iy) * n[2] + iz;
}

std::array<int, 3> GridSpec::unravel(std::uint64_t idx) const {
    const int iz = static_cast<int>(idx % n[2]);
    idx /= n[2];
    const int iy = static_cast<int>(idx % n[1]);
    const int ix = static_cast<int>(idx / n[1]);
    return {ix, iy, iz};
}

Vec3 GridSpec::cell_center(int ix, int iy, int iz) const {
    return {origin.x + (ix + 0.5) * spacing, origin.y + (iy + 0.5) * spacing,
            origin.z + (iz + 0.5) * spacing};
}

bool GridSpec::locate(const Vec3& p, std::array<int, 3>& out) const {
    for (int i = 0; i < 3; ++i) {
        const double rel = (p[i] - origin[i]) / spacing;
        if (rel < 0.0) return false;
        const int idx = static_cast<int>(rel);  // rel >= 0, so this floors
        if (idx >= n[i]) return false;
        out[i] = idx;
    }
    return true;
}

std::vector<DensityGrid::OccupiedCell> DensityGrid::occupied() const {
    std::vector<OccupiedCell> out;
    out.reserve(cells.size());
    for (const auto& [idx, q] : cells) {
        const auto ijk = spec.unravel(idx);
        out.push_back({idx, ijk, spec.cell_center(ijk[0], ijk[1], ijk[2]), q});
    }
    std::sort(out.begin(), out.end(),
              [](const OccupiedCell& a, const OccupiedCell& b) { return a.index < b.index; });
    return out;
}

double DensityGrid::charge_sum() const {
    // Summed in canonical order so the result is reproducible.
    double s = 0.0;
    for (const auto& cell : occupied()) s += cell.q;
    return s;
}

Vec3 DensityGrid::dipole_about(const Vec3& point) const {
    Vec3 d;
    for (const auto& cell : occupied()) d += (cell.center - point) * cell.q;
    return d;
}

void DensityGrid::validate() const {
    spec.validate();
    require(!cells.empty(), "grid has occupied cells");
    int positive = 0, negative = 0;
    for (const auto& [idx, q] : cells) {
        require(idx < spec.n_total(),
                fmt::format("cell index within grid (got {})", idx));
        if (q > 0.0) ++positive;
        if (q < 0.0) ++negative;
    }
    require(positive == 0 || negative == 0, "cell charges share one sign");
    const double total = charge_sum();
    require(std::abs(total - total_charge) <=
                1e-9 * std::max(std::abs(total_charge), std::abs(total)),
            fmt::format("cell charges sum to total_charge (sum {:.12e}, declared {:.12e})",
                        total, total_charge));
}

double linear_pdf(double s_cm, double lambda_cm) {
    require(lambda_cm > 0.0, fmt::format("lambda > 0 (got {:.6e} cm)", lambda_cm));
    const double support = 3.0 * lambda_cm * lambda_cm - s_cm * s_cm;
    require(support > 0.0,
            fmt::format("|s| < sqrt(3)*lambda (got s = {:.6e} cm)", s_cm));
    return 1.0 / (pi * std::sqrt(support));
}

double cylinder_pdf(double z_cm, double lambda_cm) {
    require(lambda_cm > 0.0, fmt::format("lambda > 0 (got {:.6e} cm)", lambda_cm));
    require(std::abs(z_cm) <= lambda_cm,
            fmt::format("|z| <= lambda (got z = {:.6e} cm)", z_cm));
    return 1.0 / (2.0 * pi * std::sqrt(2.0 * lambda_cm * lambda_cm - z_cm * z_cm));
}

namespace {

// Fixed sampling block: determinism requires that sample j always comes from
// the same RNG stream no matter how blocks are assigned to threads.
constexpr std::uint64_t kBlock = 65536;

}  // namespace

DensityGrid sample_time_marginal(const ModeEnsemble& ens, std::uint64_t n_samples,
                                 const GridSpec& grid, std::uint64_t seed,
                                 int threads, const PhysicalConstants& k) {
    ens.validate();
    grid.validate();
    require(n_samples >= 1, "n_samples >= 1");

    const std::uint64_t n_blocks = (n_samples + kBlock - 1) / kBlock;
    const int n_workers =
        static_cast<int>(std::min<std::uint64_t>(resolve_threads(threads),
                                                 std::max<std::uint64_t>(n_blocks, 1)));

    std::unordered_map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t escaped = 0;
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next_block{0};

    auto worker = [&]() {
        std::unordered_map<std::uint64_t, std::uint64_t> local;
        std::uint64_t local_escaped = 0;
        std::array<int, 3> ijk;
        for (;;) {
            const std::uint64_t block = next_block.fetch_add(1);
            if (block >= n_blocks) break;
            std::mt19937_64 rng(substream_seed(seed, block));
            const std::uint64_t begin = block * kBlock;
            const std::uint64_t end = std::min(begin + kBlock, n_samples);
            for (std::uint64_t s = begin; s < end; ++s) {
                // Phase uniform over one closure period; computed directly so
                // the geometry is independent of the absolute time scale.
                const double psi = 2.0 * pi * uniform01(rng);
                const Vec3 pos = position_at_phase(ens, psi);
                if (grid.locate(pos, ijk))
                    ++local[grid.linear_index(ijk[0], ijk[1], ijk[2])];
                else
                    ++local_escaped;
            }
        }
        std::lock_guard<std::mutex> lock(merge_mutex);
        // Integer merges commute, so the totals are partition-independent.
        for (const auto& [idx, c] : local) counts[idx] += c;
        escaped += local_escaped;
    };

    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (int i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    if (escaped > 0)
        throw std::domain_error(fmt::format(
            "precondition violated: grid covers the sampled trajectory "
            "(escaped fraction {:.3e})",
            static_cast<double>(escaped) / static_cast<double>(n_samples)));

    DensityGrid out;
    out.spec = grid;
    out.total_charge = -k.e;
    out.cells.reserve(counts.size());
    const double unit = out.total_charge / static_cast<double>(n_samples);
    for (const auto& [idx, c] : counts)
        out.cells.emplace(idx, unit * static_cast<double>(c));
    return out;
}

DensityGrid shell_surface_grid(double r0_cm, const GridSpec& grid,
                               double total_charge) {
    grid.validate();
    require(r0_cm > 0.0, fmt::format("r0 > 0 (got {:.6e} cm)", r0_cm));
    require(total_charge != 0.0, "total_charge != 0");

    const Vec3 center{grid.origin.x + 0.5 * grid.n[0] * grid.spacing,
                      grid.origin.y + 0.5 * grid.n[1] * grid.spacing,
                      grid.origin.z + 0.5 * grid.n[2] * grid.spacing};
    for (int i = 0; i < 3; ++i) {
        const double lo = center[i] - r0_cm - grid.origin[i];
        const double hi = grid.origin[i] + grid.n[i] * grid.spacing - (center[i] + r0_cm);
        require(lo >= 0.0 && hi >= 0.0,
                fmt::format("sphere contained in grid (r0 = {:.6e} cm)", r0_cm));
    }

    // Equal-area lattice: midpoint-rule nodes in (cos theta, phi), one equal
    // weight each. Midpoint symmetry makes the node set exactly mirror
    // symmetric about the center, so odd moments cancel.
    const int per_radius = static_cast<int>(std::ceil(r0_cm / grid.spacing));
    const int n_theta = std::max(16, 16 * per_radius);
    const int n_phi = 2 * n_theta;

    std::unordered_map<std::uint64_t, double> weight;
    std::array<int, 3> ijk;
    for (int it = 0; it < n_theta; ++it) {
        const double ct = -1.0 + (2.0 * it + 1.0) / n_theta;
        const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int ip = 0; ip < n_phi; ++ip) {
            const double phi = 2.0 * pi * (ip + 0.5) / n_phi;
            const Vec3 node = center + Vec3{r0_cm * st * std::cos(phi),
                                            r0_cm * st * std::sin(phi), r0_cm * ct};
            require(grid.locate(node, ijk), "sphere contained in grid");
            weight[grid.linear_index(ijk[0], ijk[1], ijk[2])] += 1.0;
        }
    }

    double total_weight = 0.0;
    for (const auto& [idx, w] : weight) total_weight += w;

    DensityGrid out;
    out.spec = grid;
    out.total_charge = total_charge;
    out.cells.reserve(weight.size());
    for (const auto& [idx, w] : weight)
        out.cells.emplace(idx, total_charge * (w / total_weight));
    return out;
}

std::vector<double> project_onto_axis(const DensityGrid& grid, const Vec3& axis_unit,
                                      double s_min_cm, double bin_width_cm,
                                      int n_bins) {
    require(n_bins >= 1, fmt::format("n_bins >= 1 (got {})", n_bins));
    require(bin_width_cm > 0.0,
            fmt::format("bin_width > 0 (got {:.6e} cm)", bin_width_cm));
    const double norm = axis_unit.norm();
    require(std::abs(norm - 1.0) < 1e-9,
            fmt::format("axis_unit has unit norm (got {:.12g})", norm));

    const Vec3 center{grid.spec.origin.x + 0.5 * grid.spec.n[0] * grid.spec.spacing,
                      grid.spec.origin.y + 0.5 * grid.spec.n[1] * grid.spec.spacing,
                      grid.spec.origin.z + 0.5 * grid.spec.n[2] * grid.spec.spacing};
    std::vector<double> bins(static_cast<std::size_t>(n_bins), 0.0);
    for (const auto& cell : grid.occupied()) {
        const double s = (cell.center - center).dot(axis_unit);
        const double rel = (s - s_min_cm) / bin_width_cm;
        if (rel < 0.0) continue;
        const int b = static_cast<int>(rel);
        if (b >= n_bins) continue;
        bins[static_cast<std::size_t>(b)] += std::abs(cell.q);
    }
    return bins;
}

}  // namespace zbw
