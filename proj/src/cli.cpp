#include "cli.hpp"

#include "swell/barrier.hpp"
#include "swell/config.hpp"
#include "swell/diagnostics.hpp"
#include "swell/newton.hpp"
#include "swell/radial.hpp"
#include "swell/report.hpp"
#include "swell/verify.hpp"

#include <cmath>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <variant>

namespace fs = std::filesystem;

namespace swell {

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::invalid_config:
    case ErrorCode::empty_interior:
    case ErrorCode::disconnected_interior:
    case ErrorCode::thin_feature:
    case ErrorCode::log_at_origin:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::grid_mismatch:
    case ErrorCode::too_short:
    case ErrorCode::center_outside_domain:
    case ErrorCode::empty_reflection_region:
    case ErrorCode::io_failure:
        return 1;
    default:
        return 2;
    }
}

namespace {

fs::path resolve_out_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("SWELL_OUT_DIR"); env && *env) return fs::path(env);
    return cfg.output.dir;
}

Point domain_center(const DomainSpec& dom) {
    if (const auto* r = std::get_if<Rectangle>(&dom))
        return {0.5 * (r->x_min + r->x_max), 0.5 * (r->y_min + r->y_max)};
    if (const auto* d = std::get_if<Disk>(&dom)) return d->center;
    if (const auto* a = std::get_if<Annulus>(&dom)) return a->center;
    const Rectangle& bb = std::get<Implicit>(dom).bounding_box;
    return {0.5 * (bb.x_min + bb.x_max), 0.5 * (bb.y_min + bb.y_max)};
}

CheckVerdict run_radial_oracle(const RunConfig& cfg, const Grid& grid, const Field& u,
                               std::optional<RadialProfile>& profile_out) {
    const Point c = domain_center(cfg.domain);
    RadialProblem rp;
    rp.epsilon = cfg.solver.epsilon;
    if (const auto* a = std::get_if<Annulus>(&cfg.domain)) {
        rp.r_in = a->r_inner;
        rp.r_out = a->r_outer;
        rp.u_in = eval_boundary(cfg.boundary, c.x + a->r_inner, c.y);
    } else {
        rp.r_out = std::get<Disk>(cfg.domain).radius;
    }
    rp.u_out = eval_boundary(cfg.boundary, c.x + rp.r_out, c.y);
    RadialProfile profile = radial_solve(rp);

    // Calibrate the comparison tolerance from one h/2 refinement: for an
    // O(h^2) scheme |u_h - u| <= (4/3)|u_h - u_{h/2}|; factor 2 for slack.
    const Grid fine = build_grid(cfg.domain, cfg.h / 2.0);
    auto [uf, rep] = continuation_solve(fine, cfg.solver);
    double pair_diff = 0.0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        const int kf = fine.node_at(2 * node.i, 2 * node.j);
        if (kf >= 0) pair_diff = std::max(pair_diff, std::abs(u[k] - uf[kf]));
    }
    const double tol = std::max(1e-3, 2.0 * (4.0 / 3.0) * pair_diff);

    double ray_err = 0.0;
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        const double r = std::hypot(node.x - c.x, node.y - c.y);
        ray_err = std::max(ray_err, std::abs(u[k] - interpolate_radial(profile, r)));
    }

    profile_out = std::move(profile);
    CheckVerdict v;
    v.name = "radial_oracle";
    v.lhs = ray_err;
    v.rhs = 0.0;
    v.margin = tol;
    v.pass = ray_err <= tol;
    v.details = "max |u - oracle| over nodes; tolerance from h/2 Richardson pair";
    return v;
}

std::vector<CheckVerdict> run_checks(const RunConfig& cfg, const Grid& grid, const Field& u,
                                     std::optional<RadialProfile>& profile_out) {
    const double eps = cfg.solver.epsilon;
    const double tol = default_tol_disc(eps, cfg.h);
    const Point c = domain_center(cfg.domain);

    std::vector<CheckVerdict> out;
    for (CheckKind kind : cfg.checks) {
        switch (kind) {
        case CheckKind::lemma1: {
            const BarrierResult barrier = solve_barrier(grid, cfg.boundary, eps);
            out.push_back(check_lemma1(u, barrier, tol));
            break;
        }
        case CheckKind::lemma2:
            out.push_back(gradient_bound_check(u, eps, tol, &cfg.boundary));
            break;
        case CheckKind::symmetry: {
            CheckVerdict v;
            v.name = "symmetry";
            v.lhs = angular_asymmetry(u, c, 64);
            v.rhs = 0.0;
            v.margin = tol;
            v.pass = v.lhs <= tol;
            v.details = "max angular spread over sampled circles, 64 rays";
            out.push_back(std::move(v));
            break;
        }
        case CheckKind::moving_plane:
            for (double lambda : cfg.moving_plane_lambdas)
                out.push_back(moving_plane_check(u, lambda, tol));
            break;
        case CheckKind::monotonicity: {
            CheckVerdict v = radial_monotonicity_2d(u, c, 10.0 * cfg.h * cfg.h);
            v.details += "; informational: outside the small-epsilon regime a valid "
                         "solution need not be monotone";
            out.push_back(std::move(v));
            break;
        }
        case CheckKind::radial_oracle:
            out.push_back(run_radial_oracle(cfg, grid, u, profile_out));
            break;
        }
    }
    return out;
}

bool gates_exit(const CheckVerdict& v) {
    return v.details.find("informational") == std::string::npos;
}

void write_error_report(const fs::path& out_dir, const std::string& report_name,
                        nlohmann::ordered_json& report, const Error& e) {
    report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    try {
        fs::create_directories(out_dir);
        write_file(out_dir / report_name, report.dump(2) + "\n");
    } catch (...) {
        // Reporting is best effort once the run has already failed.
    }
}

} // namespace

int cmd_solve(const std::string& config_path) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
    } catch (const Error& e) {
        std::cerr << "swell: " << e.what() << "\n";
        // best effort: if the document is readable enough to name an output
        // directory, leave the error report there too
        try {
            std::ifstream in(config_path);
            const auto doc = nlohmann::json::parse(in);
            fs::path dir = doc.value("output", nlohmann::json::object())
                               .value("dir", std::string("."));
            if (const char* env = std::getenv("SWELL_OUT_DIR"); env && *env)
                dir = fs::path(env);
            nlohmann::ordered_json report;
            report["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
            fs::create_directories(dir);
            write_file(dir / "report.json", report.dump(2) + "\n");
        } catch (...) {
        }
        return exit_code_for(e.code());
    }

    const fs::path out_dir = resolve_out_dir(cfg);
    nlohmann::ordered_json report;
    report["config"] = config_to_json(cfg);

    try {
        fs::create_directories(out_dir);
        const Grid grid = build_grid(cfg.domain, cfg.h);
        auto [u, solve_rep] = continuation_solve(grid, cfg.solver);

        std::optional<RadialProfile> profile;
        const std::vector<CheckVerdict> verdicts = run_checks(cfg, grid, u, profile);

        report["solve"] = solve_report_to_json(solve_rep);
        if (std::holds_alternative<LogRBoundary>(cfg.boundary) &&
            !is_inside(cfg.domain, 0.0, 0.0)) {
            // log r solves the PDE on origin-free domains; record the error
            double err = 0.0;
            for (int k = 0; k < grid.interior_count(); ++k) {
                const GridNode& node = grid.node(k);
                err = std::max(err, std::abs(u[k] - 0.5 * std::log(node.x * node.x +
                                                                   node.y * node.y)));
            }
            report["exact_error"] = err;
        }
        report["checks"] = nlohmann::ordered_json::array();
        for (const CheckVerdict& v : verdicts) report["checks"].push_back(verdict_to_json(v));
        report["error"] = nullptr;

        write_file(out_dir / cfg.output.report_json, report.dump(2) + "\n");
        write_file(out_dir / cfg.output.field_csv, field_csv(u));
        if (!cfg.output.heatmap_pgm.empty())
            write_file(out_dir / cfg.output.heatmap_pgm, render_pgm(u));
        if (profile && !cfg.output.profile_csv.empty())
            write_file(out_dir / cfg.output.profile_csv, profile_csv(*profile));

        std::cout << "solved " << grid.interior_count() << " unknowns in "
                  << solve_rep.total_newton_iterations() << " Newton iterations, sup|u| = "
                  << solve_rep.sup_abs_u << "\n";
        bool failed = false;
        for (const CheckVerdict& v : verdicts) {
            std::cout << "check " << v.name << ": " << (v.pass ? "PASS" : "FAIL") << "\n";
            if (!v.pass && gates_exit(v)) failed = true;
        }
        return failed ? 3 : 0;
    } catch (const Error& e) {
        write_error_report(out_dir, cfg.output.report_json, report, e);
        std::cerr << "swell: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "swell: " << e.what() << "\n";
        return 1;
    }
}

int cmd_converge(const std::string& config_path, int levels) {
    RunConfig cfg;
    try {
        cfg = load_run_config(config_path);
        if (levels < 2 || levels > 8)
            fail(ErrorCode::invalid_config, "levels: expected 2..8");
    } catch (const Error& e) {
        std::cerr << "swell: " << e.what() << "\n";
        return exit_code_for(e.code());
    }

    try {
        const fs::path out_dir = resolve_out_dir(cfg);
        fs::create_directories(out_dir);

        // Exact mode when the log r solution applies everywhere on the grid;
        // otherwise Richardson differences at coincident nodes.
        const bool exact = std::holds_alternative<LogRBoundary>(cfg.boundary) &&
                           !is_inside(cfg.domain, 0.0, 0.0);

        std::deque<Grid> grids; // stable addresses; each Field points at its grid
        std::vector<Field> fields;
        for (int l = 0; l < levels; ++l) {
            const double h = cfg.h / static_cast<double>(1 << l);
            grids.push_back(build_grid(cfg.domain, h));
            auto [u, rep] = continuation_solve(grids.back(), cfg.solver);
            fields.push_back(std::move(u));
        }

        std::vector<ConvergenceRow> rows;
        if (exact) {
            for (int l = 0; l < levels; ++l) {
                double err = 0.0;
                for (int k = 0; k < grids[l].interior_count(); ++k) {
                    const GridNode& node = grids[l].node(k);
                    err = std::max(err, std::abs(fields[l][k] -
                                                 0.5 * std::log(node.x * node.x +
                                                                node.y * node.y)));
                }
                ConvergenceRow row{grids[l].spacing(), err, std::nullopt};
                if (!rows.empty()) row.order = std::log2(rows.back().error / err);
                rows.push_back(row);
            }
        } else {
            for (int l = 1; l < levels; ++l) {
                double diff = 0.0;
                for (int k = 0; k < grids[l - 1].interior_count(); ++k) {
                    const GridNode& node = grids[l - 1].node(k);
                    const int kf = grids[l].node_at(2 * node.i, 2 * node.j);
                    if (kf >= 0)
                        diff = std::max(diff, std::abs(fields[l - 1][k] - fields[l][kf]));
                }
                ConvergenceRow row{grids[l].spacing(), diff, std::nullopt};
                if (!rows.empty()) row.order = std::log2(rows.back().error / diff);
                rows.push_back(row);
            }
        }

        write_file(out_dir / cfg.output.convergence_csv, convergence_csv(rows));
        std::cout << (exact ? "exact errors vs log r" : "Richardson pair differences") << "\n";
        for (const ConvergenceRow& row : rows) {
            std::cout << "h = " << row.h << "  error = " << row.error;
            if (row.order) std::cout << "  order = " << *row.order;
            std::cout << "\n";
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "swell: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "swell: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(std::ostream& os) {
    const std::vector<CriterionResult> results = run_acceptance();
    print_acceptance(results, os);
    return acceptance_exit_code(results);
}

} // namespace swell
