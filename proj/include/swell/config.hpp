#pragma once

#include "swell/domain.hpp"
#include "swell/newton.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace swell {

enum class CheckKind { lemma1, lemma2, symmetry, moving_plane, monotonicity, radial_oracle };

const char* check_name(CheckKind kind);

struct OutputSpec {
    std::filesystem::path dir = ".";
    std::string field_csv = "field.csv";
    std::string report_json = "report.json";
    std::string heatmap_pgm;    // empty: not written
    std::string profile_csv;    // radial-oracle profile; empty: not written
    std::string convergence_csv = "convergence.csv";
};

struct RunConfig {
    DomainSpec domain = Disk{{0.0, 0.0}, 1.0};
    double h = 0.1;
    BoundarySpec boundary = ZeroBoundary{};
    SolverConfig solver;
    std::vector<CheckKind> checks;
    std::vector<double> moving_plane_lambdas{0.0, 0.1, 0.25};
    OutputSpec output;

    void validate() const;
};

// Strict parse: unknown keys and out-of-range values raise InvalidConfig
// naming the offending field.  Configs express the named shapes only;
// implicit-sdf domains exist in the API alone.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::filesystem::path& file);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);

} // namespace swell
