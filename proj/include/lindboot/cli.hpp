// cli.hpp: Observable mini-language, run configuration and command dispatch

#pragma once

#include "lindboot/operator_algebra.hpp"
#include "lindboot/search_drivers.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace lindboot {

struct ObservableFactor {
    SiteOperator op;
    int site; // >= 1
};

struct ObservableTerm {
    double coefficient = 1.0;
    std::vector<ObservableFactor> factors;
};

/// expr := term ('+' term)* ; term := [float '*'] factor ('*' factor)* ; factor := op int
struct ObservableExpr {
    std::vector<ObservableTerm> terms;

    int max_site() const;
    /// Factors multiply left to right as operators.
    OperatorSum to_operator_sum() const;
};

/// Throws ParseError with a 1-based column.
ObservableExpr parse_observable(std::string_view text);

/// Throws SiteOutOfRange if a factor sits beyond site n.
void check_sites(const ObservableExpr& expr, int n);

struct RunConfig {
    std::string command;
    std::string name; // output file stem; empty means the command
    std::string model = "qcp";
    std::vector<double> omega;
    std::vector<int> n;
    std::string objective = "Z1";
    std::string direction = "max"; // min | max | both
    std::string method = "steady"; // critical: steady | ratio
    std::string problem = "steady"; // export-sdpa: steady | ratio | gap
    double delta = 0.5;             // export-sdpa gap candidate
    GapSearchOptions gap;
    CriticalOptions critical;
    SolverSettings solver;
    std::string output_dir = "results";
    std::string sdpa_out;
    std::string timing = "wall"; // wall | off (seconds column written as 0)

    std::string stem() const { return name.empty() ? command : name; }
    void validate() const;
};

/// Sets one documented key from text; throws InvalidConfig naming the key.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

/// Flat key = value file; '#' starts a comment. Diagnostics carry the line number.
void load_config_file(RunConfig& config, const std::string& path);

/// Every documented key with a value that round-trips through apply_setting.
std::map<std::string, std::string> config_settings(const RunConfig& config);

/// Keys accepted by apply_setting.
const std::vector<std::string>& config_keys();

/// Reads the "config" object of a manifest written by run().
void load_manifest(RunConfig& config, const std::string& path);

/// 9 significant digits; inf / -inf / nan spelled out.
std::string format_number(double v);

/// Executes a validated configuration; returns the process exit status.
int run(const RunConfig& config, std::ostream& log);

inline constexpr const char* kOutputDirEnv = "LINDBOOT_OUTPUT_DIR";
inline constexpr const char* kVersion = "0.1.0";

} // namespace lindboot
