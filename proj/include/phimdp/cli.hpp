#ifndef PHIMDP_CLI_HPP_
#define PHIMDP_CLI_HPP_

#include <string>
#include <vector>

namespace phimdp {

/// Experiment CLI entry point (subcommands: run, count-trees, inspect-tree).
/// Exit codes: 0 success, 2 usage error, 3 runtime failure.
int cli_main(const std::vector<std::string>& args);

}  // namespace phimdp

#endif  // PHIMDP_CLI_HPP_
