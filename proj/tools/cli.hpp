#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infolab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNumericalError = 2;

// Environment variable naming the directory used when --out is omitted.
inline constexpr const char* kOutDirEnv = "INFOLAB_OUT_DIR";

// args excludes the program name. Results go to --out, to
// $INFOLAB_OUT_DIR/<subcommand>.<ext>, or to `out`, in that order.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string usage();

}  // namespace infolab::cli
