#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pgn {

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;  // flag name without dashes -> value
    std::string input;
    std::string out;  // output directory; empty means stdout only where allowed
    std::optional<double> budget;
    bool strict = false;
    std::string cache_dir;
    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

// `key = value` lines; '#' starts a comment line.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);

enum ExitCode { kExitOk = 0, kExitValidation = 1, kExitUsage = 2, kExitInfeasible = 3 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Flags override a --config file, which overrides defaults. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args);

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// parse_args + run with exit code mapping; returns the process exit code.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pgn
