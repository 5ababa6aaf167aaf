#ifndef MA2D3_RUNNER_HPP
#define MA2D3_RUNNER_HPP

#include <string>

#include "core/config.hpp"

namespace ma2d3 {

struct RunOutcome {
  int exit_code = 0;      // 0 ok, 1 verification failure, 2 config, 3 numerical
  std::string summary;    // human-readable report, also written to out/summary.txt
};

// Execute one CLI subcommand. Artifacts land in the configured output
// directory; the summary comes back for printing. Errors are reported through
// the outcome, not thrown.
RunOutcome run_subcommand(const std::string& subcommand, RunConfig& cfg);

int exit_code_for(errc code);

}  // namespace ma2d3

#endif
