#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace onerel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitParse = 2;

struct RunConfig {
  std::string command;
  // Presentation text (plus the element for `order`), or the file path for
  // `batch` ("-" reads standard input).
  std::vector<std::string> inputs;
  bool json = false;
  int max_steps = 64;
  int jobs = 1;
  bool quiet = false;
  std::string label;
  std::optional<std::string> phi;
  // Off by default: wall-clock fields would break byte-identical reruns.
  bool timing = false;
};

int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and runs.
int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace onerel::cli
