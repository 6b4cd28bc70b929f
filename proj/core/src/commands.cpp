#include "fracground/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <vector>

#include "fracground/bubble.hpp"
#include "fracground/fourier.hpp"
#include "fracground/identities.hpp"
#include "fracground/report.hpp"
#include "fracground/selftest.hpp"
#include "fracground/snapshot.hpp"
#include "fracground/solver.hpp"

namespace fracground {

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path prepare_output_dir(const RunConfig& cfg) {
    fs::path dir(cfg.outputs.directory);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());
    return dir;
}

bool wants(const RunConfig& cfg, const char* format) {
    return std::find(cfg.outputs.formats.begin(), cfg.outputs.formats.end(), format) !=
           cfg.outputs.formats.end();
}

void write_radial_profile_csv(const fs::path& path, const Field& u) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    const Grid& g = u.grid;
    const std::int64_t count = g.point_count();
    std::vector<std::int64_t> order(static_cast<std::size_t>(count));
    std::iota(order.begin(), order.end(), std::int64_t{0});
    std::vector<double> radius(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) radius[static_cast<std::size_t>(i)] = g.radius(i);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
        if (radius[static_cast<std::size_t>(a)] != radius[static_cast<std::size_t>(b)])
            return radius[static_cast<std::size_t>(a)] < radius[static_cast<std::size_t>(b)];
        return a < b;
    });
    out << "r,value\n";
    out.precision(17);
    for (std::int64_t idx : order)
        out << radius[static_cast<std::size_t>(idx)] << ","
            << u.values[static_cast<std::size_t>(idx)] << "\n";
}

nlohmann::json result_json(const GroundStateResult& r) {
    nlohmann::json j;
    j["M"] = {{"value", r.M}, {"operation", "minimize_M"}};
    j["m_direct"] = {{"value", r.m_direct}, {"operation", "energy(omega)"}};
    j["m_formula"] = {{"value", r.m_formula}, {"operation", "least_energy_from_M"}};
    j["m_relative_gap"] =
        {{"value", std::fabs(r.m_direct - r.m_formula) / std::max(std::fabs(r.m_direct), 1e-300)},
         {"operation", "derived"}};
    j["tau"] = {{"value", r.tau}, {"operation", "phi_map"}};
    j["pohozaev_rel_residual"] = {{"value", r.pohozaev_rel_residual},
                                  {"operation", "pohozaev_residual"}};
    j["el_rel_residual"] = {{"value", r.el_rel_residual},
                            {"operation", "euler_lagrange_residual"}};
    j["mu_omega"] = {{"value", r.mu_omega}, {"operation", "solve_ground_state"}};
    j["iterations"] = {{"value", r.iterations}, {"operation", "minimize_M"}};
    j["converged"] = {{"value", r.converged}, {"operation", "minimize_M"}};
    j["v_constraint_error"] = {{"value", r.v_constraint_error},
                               {"operation", "project_to_constraint"}};
    j["tail_mass_u_min"] = {{"value", r.tail_mass_u_min}, {"operation", "tail_mass_fraction"}};
    j["tail_mass_omega"] = {{"value", r.tail_mass_omega}, {"operation", "tail_mass_fraction"}};
    j["M_uncertainty"] = {{"value", r.m_uncertainty}, {"operation", "solve_ground_state"}};
    nlohmann::json rlog = nlohmann::json::array();
    for (const auto& ev : r.rearrangement_log)
        rlog.push_back({{"iteration", ev.iteration},
                        {"T_before", ev.T_before},
                        {"T_after", ev.T_after},
                        {"accepted", ev.accepted}});
    j["rearrangement_log"] = rlog;
    return j;
}

} // namespace

int cmd_solve(const RunConfig& cfg, std::ostream& log) {
    const auto t0 = Clock::now();
    validate_params(cfg.problem);
    if (cfg.problem.N != cfg.grid.dim)
        throw ParameterError("problem.N must equal grid.dim");
    const Grid grid = make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.L);
    const ModelNonlinearity nl(cfg.problem);

    GroundStateResult result = solve_ground_state(grid, nl, cfg.solver);

    const fs::path dir = prepare_output_dir(cfg);
    nlohmann::json report = make_report_header(cfg, "solve");
    report["results"] = result_json(result);
    // b=1-normalized energies: w = b^{1/(2*-2)} u solves the b = 1 model with
    // C~ = C b^{-(q-2)/(2*-2)}, and every energy picks up b^{2/(2*-2)}.
    {
        const double two_star = cfg.problem.two_star();
        const double bfac = std::pow(cfg.problem.b, 2.0 / (two_star - 2.0));
        report["results"]["b1_normalized"] = {
            {"m_direct", result.m_direct * bfac},
            {"m_formula", result.m_formula * bfac},
            {"M", result.M * bfac},
            {"C_equivalent",
             cfg.problem.C * std::pow(cfg.problem.b, -(cfg.problem.q - 2.0) / (two_star - 2.0))},
            {"operation", "solve_ground_state"}};
    }

    if (wants(cfg, "snapshot")) {
        save_snapshot((dir / "omega.frgd").string(), result.omega, cfg.problem.s);
        save_snapshot((dir / "u_min.frgd").string(), result.u_min, cfg.problem.s);
    }
    if (wants(cfg, "csv")) write_radial_profile_csv(dir / "omega_radial.csv", result.omega);
    attach_timing(report, seconds_since(t0));
    if (wants(cfg, "json")) write_report(report, (dir / "solve_report.json").string());

    log << "solve: M=" << result.M << " m_direct=" << result.m_direct
        << " m_formula=" << result.m_formula << " EL=" << result.el_rel_residual
        << " pohozaev=" << result.pohozaev_rel_residual
        << (result.converged ? " (converged)" : " (NOT converged)") << "\n";
    return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const RunConfig& cfg, const std::string& snapshot_path, std::ostream& log) {
    const auto t0 = Clock::now();
    validate_params(cfg.problem);
    Snapshot snap = load_snapshot(snapshot_path);
    const Grid grid = make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.L);
    if (!(snap.field.grid == grid))
        throw ParameterError("snapshot grid does not match the configured grid");
    if (std::fabs(snap.s - cfg.problem.s) > 1e-12)
        throw ParameterError("snapshot fractional order s does not match problem.s");

    const ModelNonlinearity nl(cfg.problem);
    const Field& u = snap.field;
    const double el = euler_lagrange_residual(u, nl).rel_l2;
    const double poho = pohozaev_residual(u, nl);
    const double semi = seminorm_sq_spectral(u, cfg.problem.s);
    const double J = J_functional(u, nl);
    const double H = H_functional(u, nl);
    const double h_rel = std::fabs(H) / std::max(cfg.problem.s * semi, 1e-300);

    const bool pass = el <= cfg.verify.max_el_residual &&
                      poho <= cfg.verify.max_pohozaev_residual &&
                      h_rel <= cfg.verify.max_h_residual;

    const fs::path dir = prepare_output_dir(cfg);
    nlohmann::json report = make_report_header(cfg, "verify");
    report["results"] = {
        {"snapshot", snapshot_path},
        {"el_rel_residual", {{"value", el}, {"operation", "euler_lagrange_residual"}}},
        {"pohozaev_rel_residual", {{"value", poho}, {"operation", "pohozaev_residual"}}},
        {"J", {{"value", J}, {"operation", "J_functional"}}},
        {"H", {{"value", H}, {"operation", "H_functional"}}},
        {"H_rel", {{"value", h_rel}, {"operation", "H_functional"}}},
        {"seminorm_sq", {{"value", semi}, {"operation", "seminorm_sq_spectral"}}},
        {"thresholds",
         {{"max_el_residual", cfg.verify.max_el_residual},
          {"max_pohozaev_residual", cfg.verify.max_pohozaev_residual},
          {"max_h_residual", cfg.verify.max_h_residual}}},
        {"pass", pass}};
    attach_timing(report, seconds_since(t0));
    if (wants(cfg, "json")) write_report(report, (dir / "verify_report.json").string());

    log << "verify: EL=" << el << " pohozaev=" << poho << " H_rel=" << h_rel << " -> "
        << (pass ? "pass" : "FAIL") << "\n";
    return pass ? kExitOk : kExitVerifyFailed;
}

int cmd_bubble_scan(const RunConfig& cfg, std::ostream& log) {
    const auto t0 = Clock::now();
    validate_params(cfg.problem);
    if (cfg.problem.N != cfg.grid.dim)
        throw ParameterError("problem.N must equal grid.dim");
    const Grid grid = make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.L);
    BubbleScanResult scan = bubble_scan(cfg.problem, grid, cfg.scan_eps);

    const fs::path dir = prepare_output_dir(cfg);
    if (wants(cfg, "csv")) {
        std::ofstream csv(dir / "bubble_scan.csv", std::ios::trunc);
        if (!csv) throw IoError("cannot write bubble_scan.csv");
        csv << "eps,psi_2star,psi_semi,gamma,gamma_scaled,V_v_eps\n";
        csv.precision(17);
        for (std::size_t i = 0; i < scan.epsilons.size(); ++i)
            csv << scan.epsilons[i] << "," << scan.psi_2star_norms[i] << ","
                << scan.psi_seminorms[i] << "," << scan.gamma_values[i] << ","
                << scan.gamma_scaled[i] << "," << scan.V_of_v_eps[i] << "\n";
    }

    nlohmann::json report = make_report_header(cfg, "bubble-scan");
    const double two_star = cfg.problem.two_star();
    report["results"] = {
        {"epsilons", scan.epsilons},
        {"S_star_estimate", {{"value", scan.S_star_estimate}, {"operation", "bubble_scan"}}},
        {"M_upper_bound",
         {{"value", 0.5 * std::pow(two_star, (cfg.grid.dim - 2.0 * cfg.problem.s) / cfg.grid.dim) *
                        scan.S_star_estimate},
          {"operation", "m_bounds_check"}}},
        {"psi_2star_rate",
         {{"slope", scan.psi_2star_rate.slope}, {"ci", scan.psi_2star_rate.slope_ci}}},
        {"psi_seminorm_rate",
         {{"slope", scan.psi_seminorm_rate.slope}, {"ci", scan.psi_seminorm_rate.slope_ci}}},
        {"gamma_scaled", scan.gamma_scaled},
        {"V_of_v_eps", scan.V_of_v_eps},
        {"first_eps_with_V_bound",
         {{"value", scan.first_eps_with_V_bound}, {"operation", "bubble_scan"}}}};
    attach_timing(report, seconds_since(t0));
    if (wants(cfg, "json")) write_report(report, (dir / "bubble_scan.json").string());

    log << "bubble-scan: S_star=" << scan.S_star_estimate
        << " psi_2star_rate=" << scan.psi_2star_rate.slope << "\n";
    return kExitOk;
}

int cmd_path(const RunConfig& cfg, const std::string& snapshot_path, std::ostream& log) {
    const auto t0 = Clock::now();
    validate_params(cfg.problem);
    Snapshot snap = load_snapshot(snapshot_path);
    const Grid grid = make_grid(cfg.grid.dim, cfg.grid.n, cfg.grid.L);
    if (!(snap.field.grid == grid))
        throw ParameterError("snapshot grid does not match the configured grid");
    const ModelNonlinearity nl(cfg.problem);

    const double auto_t_max =
        1.5 * std::pow(cfg.grid.dim / (cfg.grid.dim - 2.0 * cfg.problem.s),
                       1.0 / (2.0 * cfg.problem.s));
    const double t_max = cfg.path.t_max > 0.0 ? cfg.path.t_max : auto_t_max;
    PathProfile profile = dilation_path_profile(snap.field, nl, t_max, cfg.path.samples);

    // rho0 for the crossing condition; S* comes from a coarse bubble scan
    // (the estimate is grid-convention level, not resolution critical here)
    const int scan_n = cfg.grid.dim <= 2 ? 128 : 32;
    const Grid scan_grid =
        make_grid(cfg.grid.dim, scan_n, std::max(std::min(cfg.grid.L, 12.0), 4.0));
    std::vector<double> scan_eps = {0.8, 0.4, 0.2};
    while (scan_eps.back() < scan_grid.spacing) {
        for (double& e : scan_eps) e *= 2.0;
    }
    BubbleScanResult mini_scan = bubble_scan(cfg.problem, scan_grid, scan_eps);
    GeometryEstimate geo =
        mountain_pass_geometry(cfg.problem, mini_scan.S_star_estimate, 0, cfg.seed, grid);
    profile.rho0 = geo.rho0;

    int exit_code = kExitOk;
    double t0_cross = 0.0;
    std::string crossing_note;
    try {
        t0_cross = path_crossing_t0(profile, profile.rho0);
    } catch (const CrossingError& e) {
        exit_code = kExitVerifyFailed;
        crossing_note = e.what();
    }

    const fs::path dir = prepare_output_dir(cfg);
    if (wants(cfg, "csv")) {
        std::ofstream csv(dir / "path_profile.csv", std::ios::trunc);
        if (!csv) throw IoError("cannot write path_profile.csv");
        csv << "t,I_closed,I_direct,dIdt,H,norm\n";
        csv.precision(17);
        for (std::size_t i = 0; i < profile.t_samples.size(); ++i)
            csv << profile.t_samples[i] << "," << profile.energies_closed_form[i] << ","
                << profile.energies_direct[i] << "," << profile.derivative_values[i] << ","
                << profile.h_values[i] << "," << profile.hs_norms[i] << "\n";
    }

    nlohmann::json report = make_report_header(cfg, "path");
    report["results"] = {
        {"t_argmax", {{"value", profile.t_argmax}, {"operation", "dilation_path_profile"}}},
        {"t_zero_H", {{"value", profile.t_zero_H}, {"operation", "dilation_path_profile"}}},
        {"rho0", {{"value", profile.rho0}, {"operation", "mountain_pass_geometry"}}},
        {"t0_crossing", {{"value", t0_cross}, {"operation", "path_crossing_t0"}}},
        {"seminorm_sq_omega", {{"value", profile.seminorm_sq_omega},
                               {"operation", "seminorm_sq_spectral"}}},
        {"geometry",
         {{"rho", geo.rho},
          {"eta", geo.eta},
          {"C_a", geo.C_a},
          {"rho0", geo.rho0},
          {"S_star_estimate", mini_scan.S_star_estimate},
          {"operation", "mountain_pass_geometry"}}},
        {"num_samples", profile.t_samples.size()},
        {"t_max", t_max}};
    if (!crossing_note.empty()) report["results"]["crossing_error"] = crossing_note;
    attach_timing(report, seconds_since(t0));
    if (wants(cfg, "json")) write_report(report, (dir / "path_report.json").string());

    log << "path: t_argmax=" << profile.t_argmax << " t_zero_H=" << profile.t_zero_H
        << " t0=" << t0_cross << "\n";
    return exit_code;
}

int cmd_selftest(std::ostream& log) {
    const int failures = run_selftest(log);
    return failures == 0 ? kExitOk : kExitVerifyFailed;
}

} // namespace fracground
