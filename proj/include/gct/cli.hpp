#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace gct {

// Runs `gct <command> ...`; args excludes the program name.
// Returns the exit code: 0 pass, 1 I/O, 2 validation or schema, 3 internal invariant.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace gct
