#pragma once

#include "swell/error.hpp"

#include <iosfwd>
#include <string>

namespace swell {

// Process exit codes: 0 ok, 1 invalid input, 2 solver failure, 3 check failure.
int exit_code_for(ErrorCode code);

int cmd_solve(const std::string& config_path);
int cmd_converge(const std::string& config_path, int levels);
int cmd_verify(std::ostream& os);

} // namespace swell
