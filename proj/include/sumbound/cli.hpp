#pragma once

#include "sumbound/copula.hpp"
#include "sumbound/makarov.hpp"
#include "sumbound/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumbound::cli {

enum ExitCode : int { kExitOk = 0, kExitInvalid = 1, kExitIo = 2 };

enum class OutputFormat { Csv, Svg };

/// Invalid user input (bad flag value, bad config line, violated invariant).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Filesystem failure while reading a config file or writing output.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian rho = 0 and 1, Clayton 2.5, Gumbel 2.5.
std::vector<DependenceModel> default_models();
std::vector<DependenceModel> figure1_models();
std::vector<DependenceModel> figure2_models();

struct RunConfig {
    double mu_x = 1.0;
    double sigma_x = 0.1;
    double mu_y = 1.5;
    double sigma_y = 0.15;
    double z_min = 1.8;
    double z_max = 3.2;
    std::size_t z_points = 200;
    std::vector<DependenceModel> models = default_models();
    std::size_t n_samples = 100000;
    std::uint64_t seed = 12345;
    std::string output_path; // empty: standard output
    OutputFormat format = OutputFormat::Csv;
    double fault_upper_shift = 0.0;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    SumProblem problem() const;
    std::vector<double> z_grid() const;
};

/// Applies key = value lines ('#' starts a comment). Keys mirror the long
/// flags with '_' or '-' (mu_x, sigma_y, z_points, n, seed, out, format,
/// model, models, preset). The first `model` line replaces the default
/// list; `models` takes a comma-separated list and may be empty.
void apply_config_text(RunConfig& config, std::string_view text);

/// Reads a file and forwards to apply_config_text. Throws IoError if the
/// file cannot be read.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Model list for "figure1" or "figure2"; throws ConfigError otherwise.
std::vector<DependenceModel> preset_models(std::string_view preset);

OutputFormat parse_format(std::string_view text);

/// Fixed significant digits, locale independent.
std::string format_number(double value, int significant_digits);

/// Shortest decimal that round-trips to the same double.
std::string format_shortest(double value);

/// `z,lower,upper` header then one row per point, 10 significant digits.
std::string render_bounds_csv(const BoundCurve& curve);

/// `model,param,n,epsilon,max_violation_low,max_violation_high,passed`.
std::string render_verify_csv(const std::vector<ContainmentReport>& reports);

struct FigureSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct FigureData {
    std::string title;
    std::vector<FigureSeries> series; // lower, upper, then one per model
    double epsilon;
};

/// Bound curves plus the empirical CDF of each model on the config grid.
FigureData build_figure(const RunConfig& config);

/// Static SVG 1.1 with one polyline per series, axes and legend.
std::string render_svg(const FigureData& figure);

/// Series table `z,<label>,...` for figure data.
std::string render_figure_csv(const FigureData& figure);

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line entry: parsing, precedence (flags > config file >
/// defaults) and dispatch. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sumbound::cli
