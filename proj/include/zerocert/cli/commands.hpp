#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "zerocert/cli/config.hpp"

namespace zerocert::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitConfigError = 2,
  kExitRuntimeError = 3,
};

// Report documents. Keys appear in a fixed order; "timings" is always last and
// is the only part that varies between identical runs.
using RunReport = Json;

RunReport cmd_certify(const RunConfig& config, std::ostream& out);
RunReport cmd_search(const RunConfig& config, std::ostream& out);
RunReport cmd_solve(const RunConfig& config, std::ostream& out);
int cmd_selftest(std::ostream& out);

struct Invocation {
  std::string subcommand;
  std::string config_path;
  std::string report_path;
  std::string sweep_csv_path;
  std::string trace_csv_path;
  std::optional<std::uint64_t> seed;
};

// Loads the config, applies flag overrides, runs the subcommand, writes the
// requested files and maps failures onto exit codes.
int run(const Invocation& invocation, std::ostream& out, std::ostream& err);

}  // namespace zerocert::cli
