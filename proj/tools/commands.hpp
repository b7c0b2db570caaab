#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rspace::cli {

/// Dispatches one CLI invocation. Returns 0 on success, 1 on domain errors
/// (error JSON on err), 2 on usage errors.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                std::istream& in);

}  // namespace rspace::cli
