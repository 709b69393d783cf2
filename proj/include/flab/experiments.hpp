#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace flab {

// Experiment commands behind the `flab` CLI.  Each parses a flat key=value
// config (unknown keys are errors), writes CSV files plus a manifest.json
// into `out_dir`, and throws std::invalid_argument on bad input or
// std::logic_error when a runtime invariant fails.
//
// Common optional overrides: `seed` (replaces the config seed) and `jobs`
// (worker count for the per-scale loops; results are assembled in scale
// order so the output is independent of jobs).

void cmd_furstenberg(const std::map<std::string, std::string>& cfg,
                     const std::string& out_dir,
                     std::optional<std::uint64_t> seed, int jobs);

void cmd_ex1(const std::map<std::string, std::string>& cfg,
             const std::string& out_dir, std::optional<std::uint64_t> seed,
             int jobs);

void cmd_tangency(const std::map<std::string, std::string>& cfg,
                  const std::string& out_dir,
                  std::optional<std::uint64_t> seed, int jobs);

void cmd_uniformize(const std::map<std::string, std::string>& cfg,
                    const std::string& out_dir,
                    std::optional<std::uint64_t> seed, int jobs);

void cmd_validate(const std::map<std::string, std::string>& cfg,
                  const std::string& out_dir,
                  std::optional<std::uint64_t> seed, int jobs);

void cmd_oracle_diff(const std::map<std::string, std::string>& cfg,
                     const std::string& out_dir,
                     std::optional<std::uint64_t> seed, int jobs);

}  // namespace flab
