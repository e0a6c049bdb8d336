#pragma once

// Subcommands behind the fractalfn executable. Each returns the JSON report
// and the process exit code; files go to the output directory.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fractalfn/cli/config.hpp"

namespace fractalfn::cli {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitInvalid = 2, kExitNoConvergence = 3 };

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommandResult {
    int exit_code = kExitOk;
    nlohmann::json report;
};

/// One inequality lhs <= rhs + slack, reported for the worst instance.
struct Check {
    Check(std::string name_, double lhs_, double rhs_, double slack_, int instances_ = 1, std::string detail_ = {})
        : name(std::move(name_)), lhs(lhs_), rhs(rhs_), slack(slack_), instances(instances_), detail(std::move(detail_)) {}

    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    int instances = 1;
    std::string detail;
    bool pass() const noexcept { return lhs <= rhs + slack; }
};

nlohmann::json to_json(const Check& c);

/// Keeps the instance with the largest lhs - rhs - slack.
void merge_worst(Check& into, double lhs, double rhs, double slack, const std::string& detail = {});

CommandResult cmd_render(const Config& cfg, const std::filesystem::path& out_dir, bool svg);
CommandResult cmd_dimension(const Config& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_minimax(const Config& cfg, const std::filesystem::path& out_dir);
CommandResult cmd_verify(const Config& cfg, const std::filesystem::path& out_dir);

/// Checks derived from a single config.
std::vector<Check> config_checks(const Config& cfg);

/// The built-in corpus checks plus the config checks of every
/// `fixtures_dir/*.json`, in file-name order.
CommandResult cmd_verify_suite(const std::string& suite, const std::filesystem::path& fixtures_dir,
                               const std::filesystem::path& out_dir);
std::vector<Check> full_suite_checks();

// Output helpers.
std::string format_double(double v);  ///< 17 significant digits
void write_text(const std::filesystem::path& path, const std::string& content);
std::string csv_table(const std::vector<std::string>& header, const std::vector<std::vector<double>>& columns);
std::string svg_polyline(const SampledFunction& g);

}  // namespace fractalfn::cli
