#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ajam {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitValidation = 2, kExitRuntime = 3 };

// Environment variable naming the default output root.
inline constexpr const char* kOutDirEnv = "AJAM_OUT_DIR";

// `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ajam
