#include "zbw/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "zbw/constants.hpp"
#include "zbw/density.hpp"
#include "zbw/dirac_beat.hpp"
#include "zbw/electrostatics.hpp"
#include "zbw/io.hpp"
#include "zbw/kinematics.hpp"
#include "zbw/mass_solver.hpp"

namespace zbw {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

// Fill in options from a flat JSON config file. Explicit flags win; config
// values are appended only for options absent from the command line.
void inject_config(std::vector<std::string>& args) {
    auto is_config = [](const std::string& a) {
        return a == "--config" || a.rfind("--config=", 0) == 0;
    };
    auto it = std::find_if(args.begin(), args.end(), is_config);
    if (it == args.end()) return;

    std::string path;
    if (*it == "--config") {
        if (std::next(it) == args.end())
            throw std::runtime_error("missing value for --config");
        path = *std::next(it);
        it = args.erase(it, std::next(it, 2));
    } else {
        path = it->substr(std::string("--config=").size());
        it = args.erase(it);
    }
    if (std::any_of(args.begin(), args.end(), is_config))
        throw std::runtime_error("--config given more than once");

    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json cfg = json::parse(in);
    if (!cfg.is_object())
        throw std::runtime_error("config must be a flat JSON object");
    for (const auto& [key, val] : cfg.items()) {
        if (val.is_structured())
            throw std::runtime_error("config values must be scalars: " + key);
        const std::string flag = "--" + key;
        if (has_flag(args, flag)) continue;
        if (val.is_boolean()) {
            if (val.get<bool>()) args.push_back(flag);
        } else if (val.is_string()) {
            args.push_back(flag);
            args.push_back(val.get<std::string>());
        } else {
            args.push_back(flag);
            args.push_back(val.dump());
        }
    }
}

// ZBW_SEED provides the default seed for the sampling subcommands.
void inject_env_seed(std::vector<std::string>& args) {
    if (args.empty()) return;
    const std::string& sub = args.front();
    if (sub != "beat" && sub != "density" && sub != "solve-mass") return;
    if (has_flag(args, "--seed")) return;
    const char* env = std::getenv("ZBW_SEED");
    if (env == nullptr || *env == '\0') return;
    args.emplace_back("--seed");
    args.emplace_back(env);
}

Axis parse_axis(const std::string& name) {
    if (name == "x") return Axis::x;
    if (name == "y") return Axis::y;
    return Axis::z;
}

std::vector<double> time_grid(double t_max_s, int steps) {
    require(t_max_s > 0.0, fmt::format("t-max > 0 (got {:.6e} s)", t_max_s));
    require(steps >= 2, fmt::format("steps >= 2 (got {})", steps));
    std::vector<double> t(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
        t[static_cast<std::size_t>(i)] = t_max_s * i / (steps - 1);
    return t;
}

std::vector<double> parse_coeffs(const std::string& csv) {
    std::vector<double> out;
    std::size_t begin = 0;
    while (begin <= csv.size()) {
        const std::size_t end = std::min(csv.find(',', begin), csv.size());
        const std::string token = csv.substr(begin, end - begin);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw std::runtime_error("bad --coeffs entry: '" + token + "'");
        }
        begin = end + 1;
        if (end == csv.size()) break;
    }
    if (out.empty()) throw std::runtime_error("--coeffs is empty");
    return out;
}

json verdict_json(const FixedPointVerdict& verdict, const std::string& note) {
    json roots = json::array();
    for (const auto& r : verdict.roots)
        roots.push_back({{"mu_g", r.mu_g}, {"residual", r.residual}});
    return {{"kind", to_string(verdict.kind)},
            {"ratio", verdict.ratio},
            {"homogeneity_defect", verdict.homogeneity_defect},
            {"note", note},
            {"roots", roots}};
}

std::string verdict_note(const FixedPointVerdict& verdict) {
    switch (verdict.kind) {
        case FixedPointKind::degenerate:
            return fmt::format(
                "functional is homogeneous of degree 1 (ratio {:.6e}): the "
                "equation fixes no mass scale, so no discrete flavour spectrum",
                verdict.ratio);
        case FixedPointKind::none:
            return "no fixed point in range";
        case FixedPointKind::roots:
            return fmt::format("{} discrete fixed point(s) in range",
                               verdict.roots.size());
    }
    return "";
}

struct ConstantsOpts {
    double mass_g = PhysicalConstants::cgs().m_e;
    bool as_json = false;
};

int run_constants(const ConstantsOpts& o, std::ostream& out) {
    const auto& k = PhysicalConstants::cgs();
    const ElectronScales s = electron_scales(o.mass_g, k);
    if (o.as_json) {
        json j{{"lambda_C_cm", s.lambda_C},
               {"T_Z_s", s.T_Z},
               {"r_classical_cm", s.r_classical},
               {"mu_B", s.mu_B}};
        out << j.dump(2) << "\n";
    } else {
        out << fmt::format("mass_g          {:.12g}\n", o.mass_g)
            << fmt::format("lambda_C_cm     {:.12g}\n", s.lambda_C)
            << fmt::format("T_Z_s           {:.12g}\n", s.T_Z)
            << fmt::format("r_classical_cm  {:.12g}\n", s.r_classical)
            << fmt::format("mu_B_erg_per_G  {:.12g}\n", s.mu_B)
            << fmt::format("alpha           {:.12g}\n", k.alpha());
    }
    return 0;
}

struct BeatOpts {
    std::string ensemble;
    std::uint64_t gaussian = 0;
    double p_scale = 5e-18;  // [g cm/s], ~0.18 m_e c
    std::uint64_t seed = 0;
    std::string axis = "x";
    double t_max_s = 0.0;
    int steps = 0;
    std::string out_path;
};

int run_beat(const BeatOpts& o, std::ostream& out) {
    const auto t0 = Clock::now();
    if (o.ensemble.empty() == (o.gaussian == 0))
        throw std::runtime_error("exactly one of --ensemble or --gaussian");
    const BeatEnsemble ens =
        !o.ensemble.empty()
            ? load_beat_ensemble(o.ensemble)
            : BeatEnsemble::gaussian_ball(o.gaussian, o.p_scale, o.seed);
    const Axis axis = parse_axis(o.axis);
    const std::vector<double> t = time_grid(o.t_max_s, o.steps);
    const std::vector<double> x = expected_position_series(ens, axis, t);
    const std::vector<double> v = expected_velocity_series(ens, axis, t);

    std::vector<std::vector<double>> rows;
    rows.reserve(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        rows.push_back({t[i], x[i], v[i]});
    const std::vector<std::string> cols{"t_s", "x_cm", "v_cm_per_s"};
    write_csv(o.out_path, cols, rows);

    RunManifest m;
    m.subcommand = "beat";
    m.parameters = {{"axis", o.axis},
                    {"t_max_s", o.t_max_s},
                    {"steps", o.steps},
                    {"cells", ens.cells.size()},
                    {"out", o.out_path}};
    if (!o.ensemble.empty()) {
        m.parameters["ensemble"] = o.ensemble;
    } else {
        m.parameters["gaussian"] = o.gaussian;
        m.parameters["p-scale"] = o.p_scale;
        m.seed = o.seed;
    }
    m.outputs = {o.out_path};
    m.wall_time_s = seconds_since(t0);
    write_manifest(m);
    out << fmt::format("wrote {} rows to {}\n", rows.size(), o.out_path);
    return 0;
}

struct TrajectoryOpts {
    std::string shape;
    double lambda_cm = 0.0;
    std::string ensemble;
    double t_max_s = 0.0;
    int steps = 0;
    std::string out_path;
};

int run_trajectory(const TrajectoryOpts& o, std::ostream& out) {
    const auto t0 = Clock::now();
    const std::vector<double> t = time_grid(o.t_max_s, o.steps);
    std::vector<std::vector<double>> rows;
    rows.reserve(t.size());
    if (o.shape == "custom") {
        if (o.ensemble.empty())
            throw std::runtime_error("--shape custom requires --ensemble");
        const ModeEnsemble ens = load_mode_ensemble(o.ensemble);
        for (double ti : t) {
            const Vec3 p = position(ens, ti);
            rows.push_back({ti, p.x, p.y, p.z});
        }
    } else if (o.shape == "linear") {
        // s(t) along the cube diagonal; equal cartesian components.
        for (double ti : t) {
            const double comp = linear_trajectory(o.lambda_cm, ti) / std::sqrt(3.0);
            rows.push_back({ti, comp, comp, comp});
        }
    } else {
        for (double ti : t) {
            const Vec3 p = cylinder_trajectory(o.lambda_cm, ti).cartesian();
            rows.push_back({ti, p.x, p.y, p.z});
        }
    }
    const std::vector<std::string> cols{"t_s", "x_cm", "y_cm", "z_cm"};
    write_csv(o.out_path, cols, rows);

    RunManifest m;
    m.subcommand = "trajectory";
    m.parameters = {{"shape", o.shape},
                    {"t_max_s", o.t_max_s},
                    {"steps", o.steps},
                    {"out", o.out_path}};
    if (o.shape == "custom")
        m.parameters["ensemble"] = o.ensemble;
    else
        m.parameters["lambda-cm"] = o.lambda_cm;
    m.outputs = {o.out_path};
    m.wall_time_s = seconds_since(t0);
    write_manifest(m);
    out << fmt::format("wrote {} rows to {}\n", rows.size(), o.out_path);
    return 0;
}

struct DensityOpts {
    std::string ensemble;
    std::string analytic;
    double lambda_cm = 0.0;
    std::uint64_t samples = 1000000;
    int grid_n = 256;
    double extent_cm = 0.0;
    std::uint64_t seed = 0;
    int steps = 256;
    int threads = 0;
    std::string out_path;
};

int run_density(const DensityOpts& o, std::ostream& out) {
    const auto t0 = Clock::now();
    if (o.ensemble.empty() == o.analytic.empty())
        throw std::runtime_error("exactly one of --ensemble or --analytic");

    RunManifest m;
    m.subcommand = "density";
    if (!o.analytic.empty()) {
        require(o.lambda_cm > 0.0,
                fmt::format("lambda > 0 (got {:.6e} cm)", o.lambda_cm));
        require(o.steps >= 1, fmt::format("steps >= 1 (got {})", o.steps));
        std::vector<std::vector<double>> rows;
        rows.reserve(static_cast<std::size_t>(o.steps));
        std::vector<std::string> cols;
        if (o.analytic == "linear") {
            cols = {"s_cm", "pdf_per_cm"};
            const double smax = std::sqrt(3.0) * o.lambda_cm;
            for (int i = 0; i < o.steps; ++i) {
                const double s = -smax + (2.0 * smax) * (i + 0.5) / o.steps;
                rows.push_back({s, linear_pdf(s, o.lambda_cm)});
            }
        } else {
            cols = {"z_cm", "pdf_per_cm"};
            for (int i = 0; i < o.steps; ++i) {
                const double z =
                    -o.lambda_cm + (2.0 * o.lambda_cm) * (i + 0.5) / o.steps;
                rows.push_back({z, cylinder_pdf(z, o.lambda_cm)});
            }
        }
        write_csv(o.out_path, cols, rows);
        m.parameters = {{"analytic", o.analytic},
                        {"lambda-cm", o.lambda_cm},
                        {"steps", o.steps},
                        {"out", o.out_path}};
        m.outputs = {o.out_path};
        m.wall_time_s = seconds_since(t0);
        write_manifest(m);
        out << fmt::format("wrote {} rows to {}\n", rows.size(), o.out_path);
        return 0;
    }

    const ModeEnsemble ens = load_mode_ensemble(o.ensemble);
    const double half =
        o.extent_cm > 0.0 ? o.extent_cm : std::sqrt(3.0) * ens.lambda_eff();
    require(o.grid_n >= 1, fmt::format("grid >= 1 (got {})", o.grid_n));
    const GridSpec grid =
        GridSpec::centered_cube(o.grid_n, 2.0 * half / o.grid_n);
    const DensityGrid field = sample_time_marginal(
        ens, o.samples, grid, o.seed, resolve_threads(o.threads));
    write_gridfile(o.out_path, field);

    m.parameters = {{"ensemble", o.ensemble}, {"samples", o.samples},
                    {"grid", o.grid_n},       {"extent-cm", half},
                    {"seed", o.seed},         {"out", o.out_path}};
    m.seed = o.seed;
    m.outputs = {o.out_path};
    m.wall_time_s = seconds_since(t0);
    write_manifest(m);
    out << fmt::format("wrote {} occupied cells to {}\n", field.cells.size(),
                       o.out_path);
    return 0;
}

struct SelfEnergyOpts {
    std::string grid_path;
    bool shell = false;
    double r0_cm = 0.0;
    double q_statc = PhysicalConstants::cgs().e;
    bool report_json = false;
    int threads = 0;
};

int run_self_energy(const SelfEnergyOpts& o, std::ostream& out) {
    if (o.grid_path.empty() == !o.shell)
        throw std::runtime_error("exactly one of --grid or --shell");
    const SelfEnergyReport rep =
        o.shell ? shell_self_energy_report(o.r0_cm, o.q_statc)
                : pairwise_self_energy(read_gridfile(o.grid_path),
                                       resolve_threads(o.threads));
    if (o.report_json) {
        json j{{"method", rep.method}, {"n_cells", rep.n_cells},
               {"spacing_cm", rep.spacing_cm}, {"w_erg", rep.w_erg},
               {"w_ev", rep.w_ev}, {"note", rep.note}};
        out << j.dump(2) << "\n";
    } else {
        out << fmt::format("self-energy ({}): w = {:.12g} erg = {:.12g} eV\n",
                           rep.method, rep.w_erg, rep.w_ev);
        if (rep.method == "pairwise")
            out << fmt::format("cells: {}   spacing: {:.12g} cm\n", rep.n_cells,
                               rep.spacing_cm);
        if (!rep.note.empty()) out << fmt::format("note: {}\n", rep.note);
    }
    return 0;
}

struct SolveMassOpts {
    std::string ensemble;
    std::string functional;
    std::string coeffs;
    std::uint64_t samples = 1000000;
    std::uint64_t seed = 0;
    int cells_per_lambda = 24;
    double mu_min_g = 0.0;
    double mu_max_g = 0.0;
    double tolerance = 1e-6;
    int threads = 0;
    bool report_json = false;
};

int run_solve_mass(const SolveMassOpts& o, std::ostream& out) {
    if (o.ensemble.empty() == o.functional.empty())
        throw std::runtime_error("exactly one of --ensemble or --functional");
    FixedPointVerdict verdict;
    if (!o.functional.empty()) {
        if (o.functional != "poly")
            throw std::runtime_error("unknown functional: " + o.functional);
        const std::vector<double> coeffs = parse_coeffs(o.coeffs);
        verdict = solve_fixed_point(polynomial_functional(coeffs), o.mu_min_g,
                                    o.mu_max_g, o.tolerance);
    } else {
        GeometrySpec geom;
        geom.modes = load_mode_ensemble(o.ensemble).modes;
        geom.cells_per_lambda = o.cells_per_lambda;
        geom.n_samples = o.samples;
        geom.seed = o.seed;
        verdict = solve_fixed_point(geom, o.mu_min_g, o.mu_max_g, o.tolerance,
                                    resolve_threads(o.threads));
    }
    const std::string note = verdict_note(verdict);
    if (o.report_json) {
        out << verdict_json(verdict, note).dump(2) << "\n";
    } else {
        out << fmt::format("kind: {}\n", to_string(verdict.kind))
            << fmt::format("ratio: {:.12g}\n", verdict.ratio)
            << fmt::format("homogeneity defect: {:.6e}\n",
                           verdict.homogeneity_defect);
        for (const auto& r : verdict.roots)
            out << fmt::format("root: mu = {:.12g} g (residual {:.3e})\n", r.mu_g,
                               r.residual);
        out << note << "\n";
    }
    return 0;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"zbw: oscillatory electron kinematics, time-marginal charge "
                 "densities, electrostatic self-energy, and the trial-mass "
                 "fixed point"};
    app.footer("Options may also come from --config FILE (flat JSON object "
               "keyed by option name; explicit flags win).\n"
               "ZBW_SEED supplies the default --seed for beat, density and "
               "solve-mass.");
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("zbw ") + kVersion);

    ConstantsOpts co;
    auto* c_cmd = app.add_subcommand(
        "constants", "Characteristic scales of a rest mass");
    c_cmd->add_option("--mass", co.mass_g, "rest mass [g]")
        ->capture_default_str();
    c_cmd->add_flag("--json", co.as_json, "emit a flat JSON object");

    BeatOpts bo;
    auto* b_cmd = app.add_subcommand(
        "beat", "Two-branch interference kinematics of a momentum-cell ensemble");
    b_cmd->add_option("--ensemble", bo.ensemble, "momentum-cell JSON file");
    b_cmd->add_option("--gaussian", bo.gaussian,
                      "generate an isotropic Gaussian ensemble of N cells");
    b_cmd->add_option("--p-scale", bo.p_scale,
                      "momentum spread for --gaussian [g cm/s]")
        ->capture_default_str();
    b_cmd->add_option("--seed", bo.seed, "RNG seed for --gaussian")
        ->capture_default_str();
    b_cmd->add_option("--axis", bo.axis, "component to report")
        ->check(CLI::IsMember({"x", "y", "z"}))
        ->required();
    b_cmd->add_option("--t-max", bo.t_max_s, "end of the time window [s]")
        ->required();
    b_cmd->add_option("--steps", bo.steps, "number of rows (endpoints included)")
        ->required();
    b_cmd->add_option("--out", bo.out_path, "output CSV path")->required();

    TrajectoryOpts to;
    auto* t_cmd =
        app.add_subcommand("trajectory", "Closed-form oscillation trajectories");
    t_cmd->add_option("--shape", to.shape, "linear, cylinder or custom")
        ->check(CLI::IsMember({"linear", "cylinder", "custom"}))
        ->required();
    t_cmd->add_option("--lambda-cm", to.lambda_cm,
                      "oscillation radius Lambda [cm]");
    t_cmd->add_option("--ensemble", to.ensemble,
                      "oscillation-mode JSON file (--shape custom)");
    t_cmd->add_option("--t-max", to.t_max_s, "end of the time window [s]")
        ->required();
    t_cmd->add_option("--steps", to.steps, "number of rows (endpoints included)")
        ->required();
    t_cmd->add_option("--out", to.out_path, "output CSV path")->required();

    DensityOpts dens;
    auto* d_cmd = app.add_subcommand(
        "density", "Time-marginal charge distribution of an oscillation");
    d_cmd->add_option("--ensemble", dens.ensemble, "oscillation-mode JSON file");
    d_cmd->add_option("--analytic", dens.analytic,
                      "closed-form marginal instead of sampling")
        ->check(CLI::IsMember({"linear", "cylinder"}));
    d_cmd->add_option("--lambda-cm", dens.lambda_cm,
                      "oscillation radius for --analytic [cm]");
    d_cmd->add_option("--samples", dens.samples, "Monte Carlo sample count")
        ->capture_default_str();
    d_cmd->add_option("--grid", dens.grid_n, "cells per cube side")
        ->capture_default_str();
    d_cmd->add_option("--extent-cm", dens.extent_cm,
                      "half extent of the cube [cm] (default sqrt(3) lambda_eff)");
    d_cmd->add_option("--seed", dens.seed, "RNG seed")->capture_default_str();
    d_cmd->add_option("--steps", dens.steps, "rows for --analytic")
        ->capture_default_str();
    d_cmd->add_option("--threads", dens.threads,
                      "worker threads (0 = all hardware threads)")
        ->capture_default_str();
    d_cmd->add_option("--out", dens.out_path, "output path (grid or CSV)")
        ->required();

    SelfEnergyOpts se;
    auto* s_cmd = app.add_subcommand(
        "self-energy", "Electrostatic self-energy of a charge distribution");
    s_cmd->add_option("--grid", se.grid_path, "ZBWGRID file");
    s_cmd->add_flag("--shell", se.shell, "uniform spherical shell instead");
    s_cmd->add_option("--r0-cm", se.r0_cm, "shell radius [cm]");
    s_cmd->add_option("--q-statC", se.q_statc, "total charge [statC]")
        ->capture_default_str();
    s_cmd->add_flag("--report-json", se.report_json, "emit a JSON report");
    s_cmd->add_option("--threads", se.threads,
                      "worker threads (0 = all hardware threads)")
        ->capture_default_str();

    SolveMassOpts sm;
    auto* m_cmd = app.add_subcommand(
        "solve-mass", "Self-energy fixed point over a trial-mass range");
    m_cmd->add_option("--ensemble", sm.ensemble, "oscillation-mode JSON file");
    m_cmd->add_option("--functional", sm.functional,
                      "closed-form energy functional (poly)");
    m_cmd->add_option("--coeffs", sm.coeffs,
                      "polynomial coefficients a0,a1,... [erg per g^k]");
    m_cmd->add_option("--samples", sm.samples, "Monte Carlo sample count")
        ->capture_default_str();
    m_cmd->add_option("--seed", sm.seed, "RNG seed")->capture_default_str();
    m_cmd->add_option("--cells-per-lambda", sm.cells_per_lambda,
                      "grid cells per lambda_eff")
        ->capture_default_str();
    m_cmd->add_option("--mu-min-g", sm.mu_min_g, "trial-mass range start [g]")
        ->required();
    m_cmd->add_option("--mu-max-g", sm.mu_max_g, "trial-mass range end [g]")
        ->required();
    m_cmd->add_option("--tolerance", sm.tolerance,
                      "degeneracy threshold and bisection tolerance")
        ->capture_default_str();
    m_cmd->add_option("--threads", sm.threads,
                      "worker threads (0 = all hardware threads)")
        ->capture_default_str();
    m_cmd->add_flag("--report-json", sm.report_json, "emit a JSON verdict");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n"
            << "run 'zbw --help' for usage\n";
        return 2;
    }

    if (*c_cmd) return run_constants(co, out);
    if (*b_cmd) return run_beat(bo, out);
    if (*t_cmd) return run_trajectory(to, out);
    if (*d_cmd) return run_density(dens, out);
    if (*s_cmd) return run_self_energy(se, out);
    if (*m_cmd) return run_solve_mass(sm, out);
    return 2;  // unreachable: require_subcommand(1)
}

}  // namespace

int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    try {
        inject_config(args);
        inject_env_seed(args);
        return run(std::move(args), out, err);
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace zbw
