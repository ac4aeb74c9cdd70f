#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace betakit {

// Entry point behind the betakit binary; exposed so tests can drive the CLI
// in-process.  Returns the process exit status: 0 all checks passed,
// 1 verification or z-gate failure, 2 malformed input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace betakit
