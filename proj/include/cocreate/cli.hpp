#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace cocreate::cli
{

/// Exit codes of the command-line tool.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_usage = 2,
};

/// Environment variable naming the default output directory.
inline constexpr const char* output_dir_env = "COCREATE_OUTPUT_DIR";

/**
 * Runs one invocation. `args` excludes the program name; normal output goes to
 * `out`, diagnostics to `err`.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

} // namespace cocreate::cli
