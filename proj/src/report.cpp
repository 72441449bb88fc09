#include "swell/report.hpp"

#include "swell/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

namespace swell {

namespace {

// 17 significant digits (max_digits10): round-trips exactly through stod.
std::string num17(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general,
                                   std::numeric_limits<double>::max_digits10);
    return std::string(buf, res.ptr);
}

} // namespace

nlohmann::ordered_json verdict_to_json(const CheckVerdict& v) {
    nlohmann::ordered_json j;
    j["name"] = v.name;
    j["pass"] = v.pass;
    j["lhs"] = v.lhs;
    j["rhs"] = v.rhs;
    j["margin"] = v.margin;
    j["details"] = v.details;
    return j;
}

nlohmann::ordered_json solve_report_to_json(const SolveReport& rep) {
    nlohmann::ordered_json j;
    j["converged"] = rep.converged;
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (const ContinuationStep& s : rep.steps) {
        nlohmann::ordered_json step;
        step["sigma"] = s.sigma;
        step["epsilon"] = s.epsilon;
        step["newton_iterations"] = s.newton_iterations;
        step["final_residual"] = s.final_residual;
        step["sup_abs_u"] = s.sup_abs_u;
        step["residual_history"] = s.residual_history;
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    j["total_newton_iterations"] = rep.total_newton_iterations();
    j["final_residual"] = rep.final_residual;
    j["sup_abs_u"] = rep.sup_abs_u;
    j["sup_abs_grad_u"] = rep.sup_abs_grad_u;
    j["wall_seconds"] = rep.wall_seconds;
    return j;
}

std::string field_csv(const Field& u) {
    std::string out = "x,y,u\n";
    const Grid& grid = u.grid();
    for (int k = 0; k < grid.interior_count(); ++k) {
        const GridNode& node = grid.node(k);
        out += num17(node.x);
        out += ',';
        out += num17(node.y);
        out += ',';
        out += num17(u[k]);
        out += '\n';
    }
    return out;
}

std::string profile_csv(const RadialProfile& profile) {
    std::string out = "r,u\n";
    for (std::size_t i = 0; i < profile.r.size(); ++i) {
        out += num17(profile.r[i]);
        out += ',';
        out += num17(profile.u[i]);
        out += '\n';
    }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "h,error,order\n";
    for (const ConvergenceRow& row : rows) {
        out += num17(row.h);
        out += ',';
        out += num17(row.error);
        out += ',';
        if (row.order) out += num17(*row.order);
        out += '\n';
    }
    return out;
}

std::vector<std::uint8_t> render_pgm(const Field& u) {
    const Grid& grid = u.grid();
    const int nx = grid.nx(), ny = grid.ny();

    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : u.values()) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = hi - lo;

    std::string header = "P5\n" + std::to_string(nx) + " " + std::to_string(ny) + "\n255\n";
    std::vector<std::uint8_t> img(header.begin(), header.end());
    img.reserve(img.size() + static_cast<std::size_t>(nx) * ny);
    for (int j = ny - 1; j >= 0; --j) {
        for (int i = 0; i < nx; ++i) {
            const int k = grid.node_at(i, j);
            if (k < 0) {
                img.push_back(0);
                continue;
            }
            const double t = span > 0.0 ? (u[k] - lo) / span : 1.0;
            img.push_back(static_cast<std::uint8_t>(std::lround(t * 255.0)));
        }
    }
    return img;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io_failure, "cannot write " + path.string());
    out << text;
    if (!out) fail(ErrorCode::io_failure, "short write to " + path.string());
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::io_failure, "cannot write " + path.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorCode::io_failure, "short write to " + path.string());
}

} // namespace swell
