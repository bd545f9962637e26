#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bootlab::cli {

constexpr int kSchemaVersion = 1;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitUsage = 64;

// Runs one subcommand. `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bootlab::cli
