#pragma once

namespace qcb {

/// Command-line driver.  Subcommands: graph-info, theta, certify, rays,
/// screen-srg, simulate.  Exit codes: 0 success, 1 verdict FAIL, 2 usage
/// error, 3 resource or convergence error.
int run_cli(int argc, const char* const* argv);

} // namespace qcb
