#pragma once

// The modcross command line, callable in-process.

#include "modcross/census.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace modcross::cli {

enum class Format { csv, json };

struct ScanConfig {
    Int from = 3;
    Int to = 3;
    unsigned jobs = 1;
    Format format = Format::csv;
    CensusOptions census;
    std::optional<std::string> out_path;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

/// Renders a finished scan in the configured format.
std::string render_scan(const ScanConfig& config, const std::vector<CensusRecord>& rows);

/// Parses argv (argv[0] is the program name) and runs one subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modcross::cli
