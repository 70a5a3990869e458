#include "sumbound/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sumbound::cli {

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string_view key)
{
    std::string k(key);
    std::replace(k.begin(), k.end(), '-', '_');
    std::transform(k.begin(), k.end(), k.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return k;
}

template <typename T>
T parse_value(std::string_view key, std::string_view text)
{
    T value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("invalid value for '" + std::string(key) + "': '" + std::string(text) +
                          "'");
    }
    return value;
}

DependenceModel parse_model(std::string_view text)
{
    try {
        return DependenceModel::parse(trim(text));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
}

} // namespace

std::vector<DependenceModel> figure1_models()
{
    return {DependenceModel::gaussian(0.0), DependenceModel::gaussian(1.0)};
}

std::vector<DependenceModel> figure2_models()
{
    return {DependenceModel::clayton(2.5), DependenceModel::gumbel(2.5)};
}

std::vector<DependenceModel> default_models()
{
    auto models = figure1_models();
    const auto more = figure2_models();
    models.insert(models.end(), more.begin(), more.end());
    return models;
}

std::vector<DependenceModel> preset_models(std::string_view preset)
{
    if (preset == "figure1" || preset == "figure-1") {
        return figure1_models();
    }
    if (preset == "figure2" || preset == "figure-2") {
        return figure2_models();
    }
    throw ConfigError("unknown preset '" + std::string(preset) + "' (use figure1 or figure2)");
}

OutputFormat parse_format(std::string_view text)
{
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "svg") {
        return OutputFormat::Svg;
    }
    throw ConfigError("unknown format '" + std::string(text) + "' (use csv or svg)");
}

void RunConfig::validate() const
{
    for (const double v : {mu_x, sigma_x, mu_y, sigma_y, z_min, z_max, fault_upper_shift}) {
        if (!std::isfinite(v)) {
            throw ConfigError("all numeric parameters must be finite");
        }
    }
    if (!(sigma_x > 0.0) || !(sigma_y > 0.0)) {
        throw ConfigError("sigma-x and sigma-y must be > 0");
    }
    if (!(z_min < z_max)) {
        throw ConfigError("z-min must be < z-max");
    }
    if (z_points < 2) {
        throw ConfigError("z-points must be >= 2");
    }
    if (n_samples < 1000) {
        throw ConfigError("n must be >= 1000");
    }
}

SumProblem RunConfig::problem() const
{
    return {NormalMarginal(mu_x, sigma_x), NormalMarginal(mu_y, sigma_y)};
}

std::vector<double> RunConfig::z_grid() const { return linspace(z_min, z_max, z_points); }

void apply_config_text(RunConfig& config, std::string_view text)
{
    bool model_lines_seen = false;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = normalize_key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));

        if (key == "mu_x") {
            config.mu_x = parse_value<double>(key, value);
        } else if (key == "sigma_x") {
            config.sigma_x = parse_value<double>(key, value);
        } else if (key == "mu_y") {
            config.mu_y = parse_value<double>(key, value);
        } else if (key == "sigma_y") {
            config.sigma_y = parse_value<double>(key, value);
        } else if (key == "z_min") {
            config.z_min = parse_value<double>(key, value);
        } else if (key == "z_max") {
            config.z_max = parse_value<double>(key, value);
        } else if (key == "z_points") {
            config.z_points = parse_value<std::size_t>(key, value);
        } else if (key == "n" || key == "n_samples") {
            config.n_samples = parse_value<std::size_t>(key, value);
        } else if (key == "seed") {
            config.seed = parse_value<std::uint64_t>(key, value);
        } else if (key == "out" || key == "output_path") {
            config.output_path = std::string(value);
        } else if (key == "format") {
            config.format = parse_format(value);
        } else if (key == "preset") {
            config.models = preset_models(value);
        } else if (key == "model") {
            if (!model_lines_seen) {
                config.models.clear();
                model_lines_seen = true;
            }
            config.models.push_back(parse_model(value));
        } else if (key == "models") {
            config.models.clear();
            std::string_view rest = value;
            while (!rest.empty()) {
                const auto comma = rest.find(',');
                const std::string_view item = trim(rest.substr(0, comma));
                if (!item.empty()) {
                    config.models.push_back(parse_model(item));
                }
                rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
            }
        } else {
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                              "'");
        }
    }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read config file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(config, buf.str());
}

} // namespace sumbound::cli
