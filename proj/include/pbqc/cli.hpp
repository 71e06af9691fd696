// Batch experiment driver: maps subcommands onto the module operations and
// writes machine-readable reports.
#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "pbqc/config.hpp"
#include "pbqc/report.hpp"

namespace pbqc {

inline constexpr const char* kToolVersion = "pbqclab 0.1.0";

struct CliOptions {
    std::string subcommand;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::string format = "report"; // report | table
    bool quiet = false;
};

// throws ParseError / ValidationError / std::runtime_error
RunReport run_subcommand(const std::string& subcommand, const ScenarioConfig& cfg);

// full driver: load config, run, write the report atomically; returns the
// process exit code (0 ok, 1 runtime, 2 parse, 3 validation)
int run_cli(const CliOptions& opts, std::ostream& out, std::ostream& err);

} // namespace pbqc
