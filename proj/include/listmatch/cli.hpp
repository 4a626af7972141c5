#pragma once

#include <string>
#include <vector>

namespace listmatch {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs the command line (args excludes the program name) and returns the
// process exit code: 0 success, 1 verification failure, 2 flag errors,
// 3 internal consistency failures.
int run_cli(const std::vector<std::string>& args);

// "a..b:step" | "a..b" | "a", comma separated. Throws std::invalid_argument
// mentioning `flag` on malformed input.
std::vector<int> parse_index_ranges(const std::string& text, const std::string& flag);

std::vector<int> parse_int_list(const std::string& text, const std::string& flag);

}  // namespace listmatch
