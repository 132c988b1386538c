#pragma once

#include <iosfwd>
#include <string>

#include "gmfuse/experiment.hpp"

// Command implementations behind the gmfuse binary. Kept in the library so
// they are directly testable; the executable only does flag plumbing.

namespace gmfuse::cli {

// Flat `key = value` config file; lists use repeated keys (dataset, size,
// combiner) or comma-separated plural keys (sizes, combiners). `#` starts a
// comment. Unknown keys are usage errors.
eval::ExperimentConfig parse_config_text(const std::string& text);
eval::ExperimentConfig parse_config_file(const std::string& path);

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitPropertyFailure = 3;

// Runs the configured experiment and writes results.csv, summary.txt,
// stats.txt and timing.csv into the output directory.
int cmd_run(const eval::ExperimentConfig& config, std::ostream& out, std::ostream& err);

int cmd_combine(const std::string& score_path, const std::string& combiner_name,
                const std::string& tie_policy, std::uint64_t seed, bool normalize,
                std::ostream& out, std::ostream& err);

int cmd_props(std::size_t samples, std::uint64_t seed, std::ostream& out, std::ostream& err);

} // namespace gmfuse::cli
