#include "swell/config.hpp"

#include "swell/error.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace swell {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& why) {
    fail(ErrorCode::invalid_config, path + ": " + why);
}

void expect_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& item : obj.items())
        if (!allowed.count(item.key())) bad(path + "." + item.key(), "unknown key");
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) bad(path + "." + key, "missing");
    if (!obj[key].is_number()) bad(path + "." + key, "must be a number");
    const double v = obj[key].get<double>();
    if (!std::isfinite(v)) bad(path + "." + key, "must be finite");
    return v;
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    return obj.contains(key) ? get_number(obj, path, key) : fallback;
}

Point get_point(const json& obj, const std::string& path, const std::string& key,
                Point fallback) {
    if (!obj.contains(key)) return fallback;
    const json& p = obj[key];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        bad(path + "." + key, "must be [x, y]");
    return {p[0].get<double>(), p[1].get<double>()};
}

std::vector<double> get_number_list(const json& obj, const std::string& path,
                                    const std::string& key) {
    const json& a = obj[key];
    if (!a.is_array()) bad(path + "." + key, "must be an array of numbers");
    std::vector<double> v;
    for (const auto& x : a) {
        if (!x.is_number()) bad(path + "." + key, "must be an array of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

DomainSpec parse_domain(const json& d) {
    if (!d.is_object() || !d.contains("type") || !d["type"].is_string())
        bad("domain", "must be an object with a \"type\"");
    const std::string type = d["type"].get<std::string>();
    if (type == "rectangle") {
        expect_keys(d, "domain", {"type", "x_min", "x_max", "y_min", "y_max"});
        return Rectangle{get_number(d, "domain", "x_min"), get_number(d, "domain", "x_max"),
                         get_number(d, "domain", "y_min"), get_number(d, "domain", "y_max")};
    }
    if (type == "disk") {
        expect_keys(d, "domain", {"type", "center", "radius"});
        return Disk{get_point(d, "domain", "center", {0.0, 0.0}),
                    get_number(d, "domain", "radius")};
    }
    if (type == "annulus") {
        expect_keys(d, "domain", {"type", "center", "r_inner", "r_outer"});
        return Annulus{get_point(d, "domain", "center", {0.0, 0.0}),
                       get_number(d, "domain", "r_inner"), get_number(d, "domain", "r_outer")};
    }
    if (type == "implicit")
        bad("domain.type", "implicit domains are API-only; use rectangle, disk, or annulus");
    bad("domain.type", "unknown shape \"" + type + "\"");
}

BoundarySpec parse_boundary(const json& b) {
    if (!b.is_object() || !b.contains("type") || !b["type"].is_string())
        bad("boundary", "must be an object with a \"type\"");
    const std::string type = b["type"].get<std::string>();
    if (type == "zero") {
        expect_keys(b, "boundary", {"type"});
        return ZeroBoundary{};
    }
    if (type == "constant") {
        expect_keys(b, "boundary", {"type", "value"});
        return ConstantBoundary{get_number(b, "boundary", "value")};
    }
    if (type == "log_r") {
        expect_keys(b, "boundary", {"type"});
        return LogRBoundary{};
    }
    if (type == "fourier") {
        expect_keys(b, "boundary", {"type", "a0", "a", "b"});
        FourierBoundary f;
        f.a0 = get_number(b, "boundary", "a0", 0.0);
        if (b.contains("a")) f.a = get_number_list(b, "boundary", "a");
        if (b.contains("b")) f.b = get_number_list(b, "boundary", "b");
        return f;
    }
    bad("boundary.type", "unknown boundary \"" + type + "\"");
}

SolverConfig parse_solver(const json& s) {
    SolverConfig cfg;
    if (s.is_null()) return cfg;
    if (!s.is_object()) bad("solver", "must be an object");
    expect_keys(s, "solver",
                {"epsilon", "newton_tol_abs", "newton_tol_rel", "max_newton", "max_backtracks",
                 "sigma_schedule", "epsilon_schedule", "linear_tol", "linear_max_iter"});
    cfg.epsilon = get_number(s, "solver", "epsilon", cfg.epsilon);
    if (s.contains("newton_tol_abs")) cfg.newton_tol_abs = get_number(s, "solver", "newton_tol_abs");
    cfg.newton_tol_rel = get_number(s, "solver", "newton_tol_rel", cfg.newton_tol_rel);
    cfg.max_newton = static_cast<int>(get_number(s, "solver", "max_newton", cfg.max_newton));
    cfg.max_backtracks =
        static_cast<int>(get_number(s, "solver", "max_backtracks", cfg.max_backtracks));
    if (s.contains("sigma_schedule")) cfg.sigma_schedule = get_number_list(s, "solver", "sigma_schedule");
    if (s.contains("epsilon_schedule"))
        cfg.epsilon_schedule = get_number_list(s, "solver", "epsilon_schedule");
    cfg.linear_tol = get_number(s, "solver", "linear_tol", cfg.linear_tol);
    cfg.linear_max_iter =
        static_cast<int>(get_number(s, "solver", "linear_max_iter", cfg.linear_max_iter));
    return cfg;
}

CheckKind parse_check(const std::string& name) {
    if (name == "lemma1") return CheckKind::lemma1;
    if (name == "lemma2") return CheckKind::lemma2;
    if (name == "symmetry") return CheckKind::symmetry;
    if (name == "moving_plane") return CheckKind::moving_plane;
    if (name == "monotonicity") return CheckKind::monotonicity;
    if (name == "radial_oracle") return CheckKind::radial_oracle;
    bad("checks", "unknown check \"" + name + "\"");
}

} // namespace

const char* check_name(CheckKind kind) {
    switch (kind) {
    case CheckKind::lemma1:        return "lemma1";
    case CheckKind::lemma2:        return "lemma2";
    case CheckKind::symmetry:      return "symmetry";
    case CheckKind::moving_plane:  return "moving_plane";
    case CheckKind::monotonicity:  return "monotonicity";
    case CheckKind::radial_oracle: return "radial_oracle";
    }
    return "?";
}

void RunConfig::validate() const {
    swell::validate(domain);
    if (!(h > 0.0) || !std::isfinite(h)) fail(ErrorCode::invalid_config, "h: must be positive");
    swell::validate(boundary);
    solver.validate();
    for (double l : moving_plane_lambdas)
        if (!(l >= 0.0) || !std::isfinite(l))
            fail(ErrorCode::invalid_config, "moving_plane_lambdas: entries must be >= 0");
    for (CheckKind c : checks) {
        if (c == CheckKind::radial_oracle) {
            if (std::holds_alternative<FourierBoundary>(boundary))
                fail(ErrorCode::invalid_config,
                     "checks.radial_oracle: requires radial boundary data (zero, constant, log_r)");
            if (!std::holds_alternative<Disk>(domain) && !std::holds_alternative<Annulus>(domain))
                fail(ErrorCode::invalid_config,
                     "checks.radial_oracle: requires a disk or annulus domain");
        }
    }
    if (output.field_csv.empty() || output.report_json.empty())
        fail(ErrorCode::invalid_config, "output: field_csv and report_json must be named");
}

RunConfig parse_run_config(const json& doc) {
    if (!doc.is_object()) fail(ErrorCode::invalid_config, "config root must be an object");
    expect_keys(doc, "config",
                {"domain", "h", "boundary", "solver", "checks", "moving_plane_lambdas", "output"});
    if (!doc.contains("domain")) fail(ErrorCode::invalid_config, "domain: missing");
    if (!doc.contains("h")) fail(ErrorCode::invalid_config, "h: missing");

    RunConfig cfg;
    cfg.domain = parse_domain(doc["domain"]);
    cfg.h = get_number(doc, "config", "h");
    if (doc.contains("boundary")) cfg.boundary = parse_boundary(doc["boundary"]);
    cfg.solver = parse_solver(doc.contains("solver") ? doc["solver"] : json());
    cfg.solver.boundary = cfg.boundary; // the solver consumes the same Dirichlet data
    if (doc.contains("checks")) {
        if (!doc["checks"].is_array()) fail(ErrorCode::invalid_config, "checks: must be an array");
        for (const auto& c : doc["checks"]) {
            if (!c.is_string()) fail(ErrorCode::invalid_config, "checks: entries must be strings");
            cfg.checks.push_back(parse_check(c.get<std::string>()));
        }
    }
    if (doc.contains("moving_plane_lambdas"))
        cfg.moving_plane_lambdas = get_number_list(doc, "config", "moving_plane_lambdas");
    if (doc.contains("output")) {
        const json& o = doc["output"];
        if (!o.is_object()) fail(ErrorCode::invalid_config, "output: must be an object");
        expect_keys(o, "output",
                    {"dir", "field_csv", "report_json", "heatmap_pgm", "profile_csv",
                     "convergence_csv"});
        if (o.contains("dir")) cfg.output.dir = o["dir"].get<std::string>();
        if (o.contains("field_csv")) cfg.output.field_csv = o["field_csv"].get<std::string>();
        if (o.contains("report_json")) cfg.output.report_json = o["report_json"].get<std::string>();
        if (o.contains("heatmap_pgm")) cfg.output.heatmap_pgm = o["heatmap_pgm"].get<std::string>();
        if (o.contains("profile_csv")) cfg.output.profile_csv = o["profile_csv"].get<std::string>();
        if (o.contains("convergence_csv"))
            cfg.output.convergence_csv = o["convergence_csv"].get<std::string>();
    }
    cfg.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) fail(ErrorCode::invalid_config, "cannot open config file " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorCode::invalid_config, std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg) {
    nlohmann::ordered_json j;
    std::visit([&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Rectangle>) {
            j["domain"] = {{"type", "rectangle"}, {"x_min", d.x_min}, {"x_max", d.x_max},
                           {"y_min", d.y_min}, {"y_max", d.y_max}};
        } else if constexpr (std::is_same_v<T, Disk>) {
            j["domain"] = {{"type", "disk"}, {"center", {d.center.x, d.center.y}},
                           {"radius", d.radius}};
        } else if constexpr (std::is_same_v<T, Annulus>) {
            j["domain"] = {{"type", "annulus"}, {"center", {d.center.x, d.center.y}},
                           {"r_inner", d.r_inner}, {"r_outer", d.r_outer}};
        } else {
            j["domain"] = {{"type", "implicit"}};
        }
    }, cfg.domain);
    j["h"] = cfg.h;
    std::visit([&](const auto& b) {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, ZeroBoundary>) {
            j["boundary"] = {{"type", "zero"}};
        } else if constexpr (std::is_same_v<T, ConstantBoundary>) {
            j["boundary"] = {{"type", "constant"}, {"value", b.value}};
        } else if constexpr (std::is_same_v<T, LogRBoundary>) {
            j["boundary"] = {{"type", "log_r"}};
        } else {
            j["boundary"] = {{"type", "fourier"}, {"a0", b.a0}, {"a", b.a}, {"b", b.b}};
        }
    }, cfg.boundary);
    nlohmann::ordered_json s;
    s["epsilon"] = cfg.solver.epsilon;
    if (cfg.solver.newton_tol_abs) s["newton_tol_abs"] = *cfg.solver.newton_tol_abs;
    s["newton_tol_rel"] = cfg.solver.newton_tol_rel;
    s["max_newton"] = cfg.solver.max_newton;
    s["max_backtracks"] = cfg.solver.max_backtracks;
    s["sigma_schedule"] = cfg.solver.sigma_schedule;
    if (!cfg.solver.epsilon_schedule.empty()) s["epsilon_schedule"] = cfg.solver.epsilon_schedule;
    s["linear_tol"] = cfg.solver.linear_tol;
    s["linear_max_iter"] = cfg.solver.linear_max_iter;
    j["solver"] = s;
    std::vector<std::string> names;
    for (CheckKind c : cfg.checks) names.emplace_back(check_name(c));
    j["checks"] = names;
    j["moving_plane_lambdas"] = cfg.moving_plane_lambdas;
    return j;
}

} // namespace swell
