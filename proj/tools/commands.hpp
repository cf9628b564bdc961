#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "config.hpp"

namespace znlgt::cli {

struct CommandOptions {
  std::optional<std::string> out_dir;   // overrides output.directory
  std::optional<double> tolerance;      // overrides identity/certification gates
  std::size_t cap = 4096;               // dense-solve dimension cap
};

// Exit codes: 0 success, 1 identity/certification failure, 2 usage error.
int cmd_check(const RunConfig& cfg, const CommandOptions& opt);
int cmd_gauss(const RunConfig& cfg, const CommandOptions& opt);
int cmd_spectrum(const RunConfig& cfg, const CommandOptions& opt);
int cmd_effective(const RunConfig& cfg, const CommandOptions& opt);
int cmd_evolve(const RunConfig& cfg, const CommandOptions& opt);
int cmd_sweep(const RunConfig& cfg, const CommandOptions& opt);

}  // namespace znlgt::cli
