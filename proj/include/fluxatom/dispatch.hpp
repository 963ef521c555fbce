#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "fluxatom/config.hpp"
#include "fluxatom/table.hpp"

namespace fluxatom {

struct CliOverrides {
  std::string command;
  std::string out;
  std::string format;
  bool has_seed = false;
  std::uint64_t seed = 0;
  bool quiet = false;
};

// Seed precedence: explicit config/CLI seed, then FLUXATOM_SEED, then zero.
std::uint64_t resolve_seed(const RunConfig& cfg);

struct CommandResult {
  ResultTable table;
  int exit_code = 0;  // 3 when an internal consistency gate failed
};

CommandResult run_command(const RunConfig& cfg, const std::string& command, std::uint64_t seed);

// Merge CLI overrides, run, serialize, write to run.out or `out`.
// Returns the process exit code: 0 ok, 2 rejected input, 3 internal mismatch.
int dispatch(RunConfig cfg, const CliOverrides& cli, std::ostream& out, std::ostream& diag);

}  // namespace fluxatom
