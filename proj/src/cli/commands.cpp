#include "sumbound/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace sumbound::cli {

namespace {

void emit(const RunConfig& config, const std::string& payload, std::ostream& out)
{
    if (config.output_path.empty()) {
        out << payload;
        if (!out) {
            throw IoError("failed writing to standard output");
        }
        return;
    }
    std::ofstream file(config.output_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + config.output_path + "' for writing");
    }
    file << payload;
    file.flush();
    if (!file) {
        throw IoError("failed writing '" + config.output_path + "'");
    }
}

std::string series_label(const DependenceModel& m)
{
    const char* symbol = m.kind() == DependenceKind::Gaussian ? "rho" : "theta";
    return std::string(m.name()) + " " + symbol + "=" + format_shortest(m.parameter());
}

// Shared error mapping for the three commands.
template <typename Body>
int guarded(std::ostream& err, Body&& body)
{
    try {
        return body();
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }
}

} // namespace

std::string format_number(double value, int significant_digits)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                   std::chars_format::general, significant_digits);
    return std::string(buf.data(), res.ptr);
}

std::string format_shortest(double value)
{
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string render_bounds_csv(const BoundCurve& curve)
{
    std::string s = "z,lower,upper\n";
    for (const BoundPoint& p : curve.points) {
        s += format_number(p.z, 10) + ',' + format_number(p.lower, 10) + ',' +
             format_number(p.upper, 10) + '\n';
    }
    return s;
}

std::string render_verify_csv(const std::vector<ContainmentReport>& reports)
{
    std::string s = "model,param,n,epsilon,max_violation_low,max_violation_high,passed\n";
    for (const ContainmentReport& r : reports) {
        s += std::string(r.model.name()) + ',' + format_shortest(r.model.parameter()) + ',' +
             std::to_string(r.n) + ',' + format_shortest(r.epsilon) + ',' +
             format_shortest(r.max_violation_low) + ',' + format_shortest(r.max_violation_high) +
             ',' + (r.passed ? "true" : "false") + '\n';
    }
    return s;
}

std::string render_figure_csv(const FigureData& figure)
{
    std::string s = "z";
    for (const auto& series : figure.series) {
        s += ',' + series.label;
    }
    s += '\n';
    const std::size_t rows = figure.series.empty() ? 0 : figure.series.front().x.size();
    for (std::size_t i = 0; i < rows; ++i) {
        s += format_number(figure.series.front().x[i], 10);
        for (const auto& series : figure.series) {
            s += ',' + format_number(series.y[i], 10);
        }
        s += '\n';
    }
    return s;
}

FigureData build_figure(const RunConfig& config)
{
    config.validate();
    const SumProblem problem = config.problem();
    const std::vector<double> grid = config.z_grid();
    const BoundCurve bounds = bound_curve(problem, grid);

    FigureData fig;
    fig.title = "Bounds on the distribution of X + Y, X ~ N(" + format_shortest(config.mu_x) +
                ", " + format_shortest(config.sigma_x) + "), Y ~ N(" +
                format_shortest(config.mu_y) + ", " + format_shortest(config.sigma_y) + ")";
    fig.epsilon = dkw_epsilon(config.n_samples, 0.01);

    FigureSeries lower{"lower bound", grid, {}};
    FigureSeries upper{"upper bound", grid, {}};
    for (const BoundPoint& p : bounds.points) {
        lower.y.push_back(p.lower);
        upper.y.push_back(p.upper);
    }
    fig.series.push_back(std::move(lower));
    fig.series.push_back(std::move(upper));

    for (const DependenceModel& model : config.models) {
        const EmpiricalCdf ecdf(draw_sums(model, problem, config.n_samples, config.seed));
        FigureSeries s{series_label(model), grid, {}};
        s.y.reserve(grid.size());
        for (const double z : grid) {
            s.y.push_back(ecdf(z));
        }
        fig.series.push_back(std::move(s));
    }
    return fig;
}

int cmd_bounds(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        config.validate();
        if (config.format != OutputFormat::Csv) {
            throw ConfigError("bounds writes csv only");
        }
        const auto grid = config.z_grid();
        emit(config, render_bounds_csv(bound_curve(config.problem(), grid)), out);
        return int{kExitOk};
    });
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        config.validate();
        if (config.models.empty()) {
            throw ConfigError("empty model list\n"
                              "Usage: sumbound verify --model KIND:PARAM [--model ...]\n"
                              "  KIND is gaussian (PARAM = rho), clayton or gumbel (PARAM = theta)");
        }
        if (config.format != OutputFormat::Csv) {
            throw ConfigError("verify writes csv only");
        }
        const SumProblem problem = config.problem();
        const auto grid = config.z_grid();
        VerifyOptions options;
        options.upper_shift = config.fault_upper_shift;

        std::vector<ContainmentReport> reports;
        bool all_passed = true;
        for (const DependenceModel& model : config.models) {
            reports.push_back(
                verify_containment(problem, model, config.n_samples, grid, config.seed, options));
            all_passed = all_passed && reports.back().passed;
        }
        emit(config, render_verify_csv(reports), out);
        if (!all_passed) {
            err << "verification failed: an empirical CDF left the bound band\n";
        }
        return int{all_passed ? kExitOk : kExitInvalid};
    });
}

int cmd_figure(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    return guarded(err, [&] {
        const FigureData fig = build_figure(config);
        emit(config, config.format == OutputFormat::Svg ? render_svg(fig) : render_figure_csv(fig),
             out);
        return int{kExitOk};
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bounds on the distribution of a sum of two dependent normal variables"};
    app.require_subcommand(1);

    std::optional<double> mu_x, sigma_x, mu_y, sigma_y, z_min, z_max, fault_shift;
    std::optional<std::size_t> z_points, n_samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path, format, config_path, preset;
    std::vector<std::string> models;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--mu-x", mu_x, "Mean of X (default 1)");
        sub->add_option("--sigma-x", sigma_x, "Standard deviation of X (default 0.1)");
        sub->add_option("--mu-y", mu_y, "Mean of Y (default 1.5)");
        sub->add_option("--sigma-y", sigma_y, "Standard deviation of Y (default 0.15)");
        sub->add_option("--z-min", z_min, "Left end of the z grid (default 1.8)");
        sub->add_option("--z-max", z_max, "Right end of the z grid (default 3.2)");
        sub->add_option("--z-points", z_points, "Number of grid points (default 200)");
        sub->add_option("--model", models,
                        "Dependence model kind:param, repeatable (gaussian:RHO, clayton:THETA, "
                        "gumbel:THETA)");
        sub->add_option("-n,--n", n_samples, "Monte-Carlo sample count (default 100000)");
        sub->add_option("--seed", seed, "Random seed (default 12345)");
        sub->add_option("--out", out_path, "Output file (default: standard output)");
        sub->add_option("--format", format, "csv or svg");
        sub->add_option("--config", config_path, "key = value config file");
        sub->add_option("--preset", preset, "Model preset: figure1 or figure2");
        sub->add_option("--fault-shift-upper", fault_shift,
                        "Lower the upper bound by this amount (failure-path testing)")
            ->group("");
    };

    CLI::App* bounds = app.add_subcommand("bounds", "Write the bound curves as CSV");
    CLI::App* verify = app.add_subcommand("verify", "Check simulated sums against the bounds");
    CLI::App* figure = app.add_subcommand("figure", "Plot bounds and simulated CDFs as SVG");
    for (CLI::App* sub : {bounds, verify, figure}) {
        add_common(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? int{kExitOk} : int{kExitInvalid};
    }

    RunConfig config;
    if (figure->parsed()) {
        config.format = OutputFormat::Svg;
    }
    try {
        if (config_path) {
            apply_config_file(config, *config_path);
        }
        if (preset) {
            config.models = preset_models(*preset);
        }
        if (mu_x) config.mu_x = *mu_x;
        if (sigma_x) config.sigma_x = *sigma_x;
        if (mu_y) config.mu_y = *mu_y;
        if (sigma_y) config.sigma_y = *sigma_y;
        if (z_min) config.z_min = *z_min;
        if (z_max) config.z_max = *z_max;
        if (z_points) config.z_points = *z_points;
        if (n_samples) config.n_samples = *n_samples;
        if (seed) config.seed = *seed;
        if (out_path) config.output_path = *out_path;
        if (format) config.format = parse_format(*format);
        if (fault_shift) config.fault_upper_shift = *fault_shift;
        if (!models.empty()) {
            config.models.clear();
            for (const auto& m : models) {
                config.models.push_back(DependenceModel::parse(m));
            }
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    if (bounds->parsed()) {
        return cmd_bounds(config, out, err);
    }
    if (verify->parsed()) {
        return cmd_verify(config, out, err);
    }
    return cmd_figure(config, out, err);
}

} // namespace sumbound::cli
