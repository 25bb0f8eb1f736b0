#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace haraeq_cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotCertified = 1;
inline constexpr int kExitError = 2;

inline constexpr const char* kSweepHeader =
    "step,parameter,value,epsilon_m,epsilon_n,c1_beta,c1_e,c1_f,c2,c2_threshold,ad_bc,verdict,root_count,prices";

// Runs the command line `args` (args[0] is the program name), writing reports
// to `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace haraeq_cli
