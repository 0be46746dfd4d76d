#pragma once

#include <string>
#include <vector>

namespace srnoise::cli {

// Dispatches the subcommands {steady, spectrum, variance, sweep, figure,
// verify, simulate}. Returns 0 on success, 1 on validation/input errors,
// 2 on numerical failures; diagnostics go to the error stream.
int run(const std::vector<std::string>& args);

}  // namespace srnoise::cli
