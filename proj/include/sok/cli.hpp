#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sok::cli {

inline constexpr int kSchemaVersion = 1;

/// Runs one command. args excludes the program name. Returns 0 on success,
/// 1 on domain errors (a JSON error object is written) and 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sok::cli
