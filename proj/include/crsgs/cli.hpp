#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "crsgs/types.hpp"

namespace crsgs {

/// Exit codes of cli_main.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDecodeFailure = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the directory relative --output paths go to.
inline constexpr const char* kOutputDirEnv = "CRSGS_OUTPUT_DIR";

/// Runs the command line tool; `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Complex vectors as text: one "re im" pair per line, '#' starts a comment.
CVector read_vector(std::istream& in);
void write_vector(std::ostream& out, const CVector& v);

}  // namespace crsgs
