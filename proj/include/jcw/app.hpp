// app.hpp: the jcwitness command-line front end.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jcw {

enum class Command { figure1, figure2, figure3, figure4, sweep, verify };
enum class Format { csv, json };

struct RunConfig {
    Command command = Command::verify;
    // Unset values fall back to the command's preset.
    std::optional<double> g;
    std::optional<double> delta;
    std::optional<double> gamma;
    std::optional<double> lambda;
    std::optional<int> n;
    double t_min = 0.0;
    double t_max = 6.0;
    int t_steps = 200;
    int restarts = 32;
    std::uint64_t seed = 20100301;
    std::string out;  // empty: stdout
    Format format = Format::csv;
    unsigned threads = 0;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by parse_command_line for --help; what() is the help text.
struct HelpRequested : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kCaseColumns = "t,negativity,max_fidelity,k,detected,optimizer_evals";
inline constexpr const char* kFigure2Columns = "t,lambda,negativity";

// Parses and validates; throws UsageError on bad flags or combinations.
// args excludes the program name.
RunConfig parse_command_line(const std::vector<std::string>& args);

// Executes a validated config. Data goes to `out` unless config.out names a
// file; notes and errors go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse + run with exit codes: 0 ok, 1 verification or runtime failure, 2 usage.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jcw
