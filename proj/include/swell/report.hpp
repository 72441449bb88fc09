#pragma once

#include "swell/config.hpp"
#include "swell/diagnostics.hpp"
#include "swell/field.hpp"
#include "swell/newton.hpp"
#include "swell/radial.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace swell {

nlohmann::ordered_json verdict_to_json(const CheckVerdict& v);
nlohmann::ordered_json solve_report_to_json(const SolveReport& rep);

// x,y,u rows at full round-trip precision (17 significant digits).
std::string field_csv(const Field& u);
std::string profile_csv(const RadialProfile& profile);

struct ConvergenceRow {
    double h;
    double error;
    std::optional<double> order;
};
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

// Binary P5, linear [min u, max u] -> [0,255], exterior pixels 0, row order
// top to bottom.
std::vector<std::uint8_t> render_pgm(const Field& u);

void write_file(const std::filesystem::path& path, const std::string& text);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);

} // namespace swell
