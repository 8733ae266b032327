#pragma once

#include <string>
#include <vector>

namespace uavplan {

/// Runs the command-line front end. Exit status: 0 on success, 2 when a
/// solver reports infeasibility, 1 on any other error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace uavplan
