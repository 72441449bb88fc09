#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swell {

struct CriterionResult {
    int id;
    std::string name;
    bool pass;
    std::string details;
    double seconds;
};

// The built-in acceptance suite; one entry per criterion, in order.
// Criteria never throw: infrastructure errors become failed entries.
std::vector<CriterionResult> run_acceptance();

void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& os);

// 0 when everything passed, 3 otherwise.
int acceptance_exit_code(const std::vector<CriterionResult>& results);

} // namespace swell
