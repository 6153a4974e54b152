#pragma once

#include <string>

namespace nilbohr::cli {

struct RunOptions {
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  int workers = 1;
  bool emit_latex = false;
};

/// Executes one experiment: parses the config, dispatches to the engines,
/// writes <out>/<name>.json (deterministic), <out>/<name>.csv (summary row,
/// wall time lives only here) and optionally <out>/<name>.tex. Throws
/// std::invalid_argument for config/validation problems (exit code 2) and
/// other exceptions for internal errors (exit code 1).
void run_command(const RunOptions& options);

}  // namespace nilbohr::cli
