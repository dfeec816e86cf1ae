#pragma once

#include <kdvist/types.hpp>

#include <string>
#include <vector>

namespace kdvist {

//! "start:step:end" (inclusive ends, within half a step) or a comma list
Vec parse_grid(const std::string& spec);

int run_cli(int argc, char** argv);

} // namespace kdvist
