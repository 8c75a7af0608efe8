#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace splinedim {

enum ExitCode : int {
    exit_ok = 0,
    exit_mesh_invalid = 2,
    exit_config = 3,
    exit_field_failure = 4,
    exit_io = 5,
};

// Exit code reported for an exception escaping a command.
int exit_code_for(const std::exception& e);

// Runs `spline-dim` with args (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace splinedim
