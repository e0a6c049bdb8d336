#pragma once

// Experiment configuration: JSON in, validated domain objects out. Every
// violation found during parsing or semantic checks is collected into one
// ConfigError.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fractalfn/core.hpp"
#include "fractalfn/fractal.hpp"
#include "fractalfn/spaces.hpp"

namespace fractalfn::cli {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr std::size_t kDefaultRenderGrid = (std::size_t{1} << 14) + 1;

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

/// A seed-like function: a builtin name, a trigonometric polynomial or a
/// rational trigonometric pair.
struct FunctionSpec {
    std::string label;
    std::function<double(double)> fn;
    std::optional<Interval> default_interval;
    bool periodic = false;
    /// Numerator and denominator when the function is a quotient (fig1 or a rational pair).
    std::optional<std::pair<std::function<double(double)>, std::function<double(double)>>> quotient;
};

struct DimensionOptions {
    bool estimate = false;
    double min_scale = 1.0 / 1024.0;
    double max_scale = 1.0 / 16.0;
    std::size_t n_scales = 7;
};

struct MinimaxOptions {
    std::vector<std::pair<std::size_t, std::size_t>> degrees;
    std::vector<FunctionSpec> corpus;
    std::vector<int> bernstein;
};

struct Config {
    nlohmann::json raw;
    std::string hash;  ///< SHA-256 of the canonical (sorted, compact) config text
    FunctionSpec seed;
    Interval interval{0.0, 1.0};
    Partition partition{std::vector<double>{0.0, 0.5, 1.0}};
    ScalingVector scaling{std::vector<double>{0.0, 0.0}};
    /// Linear operator, or an explicit base function.
    std::variant<BaseOperator, FunctionSpec> base = BaseOperator::bernstein(1);
    std::size_t grid = kDefaultRenderGrid;
    double tol = 1e-9;
    int max_iter = kDefaultMaxIter;
    bool render_quotient = false;
    bool render_svg = false;
    DimensionOptions dimension;
    MinimaxOptions minimax;

    SampledFunction seed_on_grid() const;
    FractalSpec spec() const;
};

/// Parses and validates; `grid_override` replaces grid_M when given.
Config parse_config(const nlohmann::json& j, std::optional<std::size_t> grid_override = {});
Config load_config(const std::string& path, std::optional<std::size_t> grid_override = {});

std::string sha256_hex(const std::string& text);

}  // namespace fractalfn::cli
