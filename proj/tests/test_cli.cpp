#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("swell_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

fs::path write_config(const fs::path& dir, const json& doc) {
    const fs::path path = dir / "config.json";
    std::ofstream out(path);
    out << doc.dump(2);
    return path;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args, const fs::path& dir,
                  const std::string& env_prefix = "") {
    const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
    const std::string cmd = env_prefix + std::string(SWELL_BIN) + " " + args + " > " +
                            out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

json disk_config(const fs::path& out_dir, double h) {
    return json{{"domain", {{"type", "disk"}, {"radius", 1.0}}},
                {"h", h},
                {"output", {{"dir", out_dir.string()}}}};
}

} // namespace

TEST_CASE("solve on the unit disk passes its checks and writes artifacts") {
    const fs::path dir = fresh_dir("solve_ok");
    json cfg = disk_config(dir, 0.05);
    cfg["checks"] = {"lemma1", "symmetry"};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 0);
    CHECK(r.out.find("solved") != std::string::npos);
    CHECK(r.out.find("check lemma1_barrier: PASS") != std::string::npos);
    CHECK(r.out.find("check symmetry: PASS") != std::string::npos);

    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["error"].is_null());
    CHECK(report["solve"]["converged"] == true);
    // Lemma 1 on the unit disk: sup|u| <= 2 sup|Phi| + tol = 3/8 + 10 h^2
    CHECK(report["solve"]["sup_abs_u"].get<double>() <= 0.375 + 10.0 * 0.05 * 0.05);
    REQUIRE(report["checks"].size() == 2);
    for (const auto& v : report["checks"]) CHECK(v["pass"] == true);

    CHECK(fs::exists(dir / "field.csv"));
    CHECK(!fs::exists(dir / "u.pgm")); // not configured, not written
}

TEST_CASE("invalid configs exit 1 and name the offending field") {
    const fs::path dir = fresh_dir("invalid");
    json cfg = disk_config(dir, 0.1);
    cfg["solver"] = {{"epsilon", -1.0}};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 1);
    CHECK(r.err.find("epsilon") != std::string::npos);

    // best-effort error report
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["error"]["code"] == "InvalidConfig");
}

TEST_CASE("log_r boundary data on an annulus reproduces the exact solution") {
    const fs::path dir = fresh_dir("exact");
    json cfg = json{{"domain",
                     {{"type", "annulus"}, {"r_inner", 1.0}, {"r_outer", 2.0}}},
                    {"h", 0.1},
                    {"boundary", {{"type", "log_r"}}},
                    {"output", {{"dir", dir.string()}, {"heatmap_pgm", "u.pgm"}}}};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 0);
    const json report = json::parse(slurp(dir / "report.json"));
    REQUIRE(report.contains("exact_error"));
    CHECK(report["exact_error"].get<double>() < 1e-3);
    CHECK(report["checks"].empty());

    const std::string pgm = slurp(dir / "u.pgm");
    CHECK(pgm.substr(0, 3) == "P5\n");
}

TEST_CASE("solver failures exit 2") {
    const fs::path dir = fresh_dir("stall");
    json cfg = disk_config(dir, 0.3);
    cfg["solver"] = {{"max_newton", 1}, {"sigma_schedule", {0.0, 1.0}}};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 2);
    CHECK(!r.err.empty());
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["error"]["code"] == "ContinuationFailed");
}

TEST_CASE("a failed check exits 3") {
    const fs::path dir = fresh_dir("asym");
    json cfg = disk_config(dir, 0.05);
    // cos(theta) boundary data forces an O(1) angular spread
    cfg["boundary"] = {{"type", "fourier"}, {"a", {1.0}}};
    cfg["checks"] = {"symmetry"};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 3);
    CHECK(r.out.find("check symmetry: FAIL") != std::string::npos);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["checks"][0]["pass"] == false);
}

TEST_CASE("monotonicity is reported but never gates the exit code") {
    const fs::path dir = fresh_dir("mono");
    // cos(theta) boundary data drives du/dr < 0 along theta = pi, so the
    // verdict fails; it must still not gate the exit
    json cfg = disk_config(dir, 0.1);
    cfg["boundary"] = {{"type", "fourier"}, {"a", {1.0}}};
    cfg["checks"] = {"monotonicity"};
    const RunResult r = run_cli("solve " + write_config(dir, cfg).string(), dir);

    CHECK(r.exit_code == 0);
    CHECK(r.out.find("check radial_monotonicity: FAIL") != std::string::npos);
    const json report = json::parse(slurp(dir / "report.json"));
    CHECK(report["checks"][0]["pass"] == false);
    const std::string details = report["checks"][0]["details"].get<std::string>();
    CHECK(details.find("informational") != std::string::npos);
}

TEST_CASE("converge in exact mode shows second order") {
    const fs::path dir = fresh_dir("conv_exact");
    const json cfg = json{{"domain",
                           {{"type", "annulus"}, {"r_inner", 1.0}, {"r_outer", 2.0}}},
                          {"h", 0.1},
                          {"boundary", {{"type", "log_r"}}},
                          {"output", {{"dir", dir.string()}}}};
    const RunResult r =
        run_cli("converge " + write_config(dir, cfg).string() + " --levels 3", dir);

    CHECK(r.exit_code == 0);
    CHECK(r.out.find("exact errors") != std::string::npos);

    std::istringstream csv(slurp(dir / "convergence.csv"));
    std::string line;
    REQUIRE(std::getline(csv, line));
    CHECK(line == "h,error,order");
    double prev_err = 0.0;
    int rows = 0;
    while (std::getline(csv, line)) {
        std::istringstream cells(line);
        std::string ch, ce, co;
        std::getline(cells, ch, ',');
        std::getline(cells, ce, ',');
        std::getline(cells, co, ',');
        const double err = std::stod(ce);
        if (rows == 0) {
            CHECK(co.empty());
        } else {
            const double order = std::stod(co);
            CHECK(order > 1.7);
            CHECK(order < 2.3);
            CHECK(err < prev_err);
        }
        prev_err = err;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("converge falls back to Richardson differences") {
    const fs::path dir = fresh_dir("conv_rich");
    const RunResult r = run_cli(
        "converge " + write_config(dir, disk_config(dir, 0.1)).string() + " --levels 3", dir);

    CHECK(r.exit_code == 0);
    CHECK(r.out.find("Richardson") != std::string::npos);

    std::istringstream csv(slurp(dir / "convergence.csv"));
    std::string line;
    std::getline(csv, line); // header
    std::vector<std::string> rows;
    while (std::getline(csv, line)) rows.push_back(line);
    REQUIRE(rows.size() == 2); // pairs, not levels
    const std::string order_cell = rows[1].substr(rows[1].rfind(',') + 1);
    const double order = std::stod(order_cell);
    CHECK(order > 1.7);
    CHECK(order < 2.3);
}

TEST_CASE("reports are byte-stable apart from the wall clock") {
    const fs::path dir1 = fresh_dir("stable1"), dir2 = fresh_dir("stable2");
    json cfg = json{{"domain",
                     {{"type", "annulus"}, {"r_inner", 1.0}, {"r_outer", 2.0}}},
                    {"h", 0.1},
                    {"boundary", {{"type", "log_r"}}},
                    {"checks", {"lemma2", "radial_oracle"}}};

    cfg["output"] = {{"dir", dir1.string()}};
    REQUIRE(run_cli("solve " + write_config(dir1, cfg).string(), dir1).exit_code == 0);
    cfg["output"] = {{"dir", dir2.string()}};
    REQUIRE(run_cli("solve " + write_config(dir2, cfg).string(), dir2).exit_code == 0);

    CHECK(slurp(dir1 / "field.csv") == slurp(dir2 / "field.csv"));

    json r1 = json::parse(slurp(dir1 / "report.json"));
    json r2 = json::parse(slurp(dir2 / "report.json"));
    CHECK(r1["solve"]["wall_seconds"].get<double>() >= 0.0);
    r1["solve"].erase("wall_seconds");
    r2["solve"].erase("wall_seconds");
    r1["config"].erase("output");
    r2["config"].erase("output");
    CHECK(r1 == r2);
}

TEST_CASE("SWELL_OUT_DIR overrides the configured output directory") {
    const fs::path cfg_dir = fresh_dir("envcfg"), override_dir = fresh_dir("envout");
    json cfg = disk_config(cfg_dir / "unused", 0.25);
    const fs::path path = write_config(cfg_dir, cfg);
    const RunResult r =
        run_cli("solve " + path.string(), cfg_dir, "SWELL_OUT_DIR=" + override_dir.string() + " ");

    CHECK(r.exit_code == 0);
    CHECK(fs::exists(override_dir / "report.json"));
    CHECK(!fs::exists(cfg_dir / "unused" / "report.json"));
}

TEST_CASE("usage errors exit 1") {
    const fs::path dir = fresh_dir("usage");
    CHECK(run_cli("", dir).exit_code == 1);
    CHECK(run_cli("frobnicate", dir).exit_code == 1);
    CHECK(run_cli("solve /nonexistent/config.json", dir).exit_code == 1);
    CHECK(run_cli("converge " + write_config(dir, disk_config(dir, 0.2)).string() +
                      " --levels 99",
                  dir)
              .exit_code == 1);
}
