#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mca {

inline constexpr const char* kToolName = "mca";
inline constexpr const char* kToolVersion = "1.0.0";

/// Batch front end with subcommands check, fit and pca. Reports go to `out`
/// (or the --output file); diagnostics to `err`.
///
/// Exit codes: 0 success, 1 usage error, 2 parse error, 3 assumption
/// violation, 4 degenerate data.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mca
