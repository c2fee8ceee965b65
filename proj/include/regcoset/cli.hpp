#pragma once

#include <iosfwd>

namespace regcoset::cli {

/// Runs one subcommand. Returns 0 on success, 2 on usage and precondition
/// errors, 1 on internal assertion failures.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace regcoset::cli
