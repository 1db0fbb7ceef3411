#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kicked_top::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Entry point behind the `kickedtop` binary; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Name of the environment variable giving a default directory for relative --out paths.
inline constexpr const char* kOutDirEnv = "KICKED_TOP_OUT_DIR";

} // namespace kicked_top::cli
