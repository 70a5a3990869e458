#include "sumbound/cli.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace sumbound;
using namespace sumbound::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "sumbound");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "sumbound_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s)
{
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    REQUIRE(r.ec == std::errc{});
    return v;
}

std::size_t count_of(const std::string& text, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) {
        ++n;
    }
    return n;
}

// Points of the k-th polyline, in SVG user coordinates.
std::vector<std::pair<double, double>> polyline_points(const std::string& svg, std::size_t k)
{
    std::size_t pos = 0;
    for (std::size_t i = 0; i <= k; ++i) {
        pos = svg.find("<polyline", pos + (i ? 1 : 0));
        REQUIRE(pos != std::string::npos);
    }
    const auto start = svg.find("points=\"", pos) + 8;
    const auto end = svg.find('"', start);
    std::vector<std::pair<double, double>> pts;
    std::istringstream in(svg.substr(start, end - start));
    for (std::string tok; in >> tok;) {
        const auto parts = split(tok, ',');
        REQUIRE(parts.size() == 2);
        pts.emplace_back(to_double(parts[0]), to_double(parts[1]));
    }
    return pts;
}

} // namespace

TEST_CASE("number formatting")
{
    CHECK(format_number(0.1, 10) == "0.1");
    CHECK(format_number(1.0 / 3.0, 10) == "0.3333333333");
    CHECK(format_number(0.0, 10) == "0");
    CHECK(format_number(1.0, 10) == "1");
    CHECK(format_number(2.5e-7, 10) == "2.5e-07");
    CHECK(format_shortest(0.1) == "0.1");
    CHECK(format_shortest(0.30000000000000004) == "0.30000000000000004");
    CHECK(to_double(format_shortest(1.0 / 7.0)) == 1.0 / 7.0);
}

TEST_CASE("RunConfig validation")
{
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.models.size() == 4);
    CHECK(c.z_grid().size() == 200);
    auto bad = [](auto mutate) {
        RunConfig r;
        mutate(r);
        CHECK_THROWS_AS(r.validate(), ConfigError);
    };
    bad([](RunConfig& r) { r.sigma_x = 0.0; });
    bad([](RunConfig& r) { r.sigma_y = -1.0; });
    bad([](RunConfig& r) { r.z_min = 3.3; });
    bad([](RunConfig& r) { r.z_points = 1; });
    bad([](RunConfig& r) { r.n_samples = 999; });
    bad([](RunConfig& r) { r.mu_x = NAN; });
}

TEST_CASE("config text parsing")
{
    RunConfig c;
    apply_config_text(c, "# comment\n mu_x = 2\nsigma-y=0.3\n\nz_points = 11 # trailing\n"
                         "model = clayton:1.5\nmodel = gumbel:3\nseed = 7\nformat = svg\n");
    CHECK(c.mu_x == 2.0);
    CHECK(c.sigma_y == 0.3);
    CHECK(c.z_points == 11);
    CHECK(c.seed == 7);
    CHECK(c.format == OutputFormat::Svg);
    REQUIRE(c.models.size() == 2);
    CHECK(c.models[0] == DependenceModel::clayton(1.5));
    CHECK(c.models[1] == DependenceModel::gumbel(3.0));

    RunConfig e;
    apply_config_text(e, "models =\n");
    CHECK(e.models.empty());
    RunConfig p;
    apply_config_text(p, "preset = figure2\n");
    CHECK(p.models == figure2_models());

    RunConfig x;
    CHECK_THROWS_AS(apply_config_text(x, "nonsense = 1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(x, "mu_x 1\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(x, "mu_x = abc\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(x, "z_points = -3\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_text(x, "model = frank:2\n"), ConfigError);
    CHECK_THROWS_AS(apply_config_file(x, scratch("does-not-exist.cfg")), IoError);
    CHECK_THROWS_AS(preset_models("figure3"), ConfigError);
}

TEST_CASE("bounds: default run")
{
    const auto r = invoke({"bounds"});
    REQUIRE(r.code == kExitOk);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 201);
    CHECK(lines[0] == "z,lower,upper");

    // Round trip against direct library calls.
    const RunConfig cfg;
    const auto grid = cfg.z_grid();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto f = split(lines[i + 1], ',');
        REQUIRE(f.size() == 3);
        const auto bp = bound_point(cfg.problem(), grid[i]);
        CHECK(std::abs(to_double(f[0]) - grid[i]) <= 1e-9);
        CHECK(std::abs(to_double(f[1]) - bp.lower) <= 1e-9);
        CHECK(std::abs(to_double(f[2]) - bp.upper) <= 1e-9);
    }
}

TEST_CASE("bounds: file output is byte-identical across runs")
{
    const auto a = scratch("a.csv");
    const auto b = scratch("b.csv");
    REQUIRE(invoke({"bounds", "--out", a.string()}).code == 0);
    REQUIRE(invoke({"bounds", "--out", b.string()}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == invoke({"bounds"}).out);
}

TEST_CASE("bounds: equal scales give 0 and 1 at the mean of the sum")
{
    const auto r = invoke({"bounds", "--sigma-y", "0.1", "--z-min", "2", "--z-max", "3",
                           "--z-points", "11"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 12);
    const auto mid = split(lines[6], ',');
    CHECK(to_double(mid[0]) == doctest::Approx(2.5));
    CHECK(mid[1] == "0");
    CHECK(mid[2] == "1");
}

TEST_CASE("precedence: flags over config file over defaults")
{
    const auto cfg = scratch("prec.cfg");
    write_file(cfg, "mu_x = 2\nz_points = 5\nz_min = 2.5\nz_max = 4.5\n");
    const auto r = invoke({"bounds", "--config", cfg.string(), "--z-points", "3"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(split(lines[1], ',')[0] == "2.5");
    CHECK(split(lines[3], ',')[0] == "4.5");
    const SumProblem p{NormalMarginal(2.0, 0.1), NormalMarginal(1.5, 0.15)};
    CHECK(std::abs(to_double(split(lines[2], ',')[1]) - lower_bound(p, 3.5)) < 1e-9);
}

TEST_CASE("exit codes")
{
    CHECK(invoke({"bounds", "--sigma-x", "0"}).code == kExitInvalid);
    CHECK(invoke({"bounds", "--sigma-x", "-1"}).code == kExitInvalid);
    CHECK(invoke({"bounds", "--z-min", "3", "--z-max", "2"}).code == kExitInvalid);
    CHECK(invoke({"bounds", "--z-points", "1"}).code == kExitInvalid);
    CHECK(invoke({"bounds", "--no-such-flag"}).code == kExitInvalid);
    CHECK(invoke({"bounds", "--format", "svg"}).code == kExitInvalid);
    CHECK(invoke({"verify", "--n", "10"}).code == kExitInvalid);
    CHECK(invoke({"verify", "--model", "clayton:-1"}).code == kExitInvalid);
    CHECK(invoke({}).code == kExitInvalid);
    CHECK(invoke({"--help"}).code == kExitOk);

    const auto r = invoke({"bounds", "--out", "/nonexistent-dir/x/out.csv"});
    CHECK(r.code == kExitIo);
    CHECK_FALSE(r.err.empty());
    CHECK(invoke({"bounds", "--config", scratch("missing.cfg").string()}).code == kExitIo);
}

TEST_CASE("verify: defaults, fault hook and empty model list")
{
    const auto r = invoke({"verify"});
    CHECK(r.code == kExitOk);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "model,param,n,epsilon,max_violation_low,max_violation_high,passed");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto f = split(lines[i], ',');
        REQUIRE(f.size() == 7);
        CHECK(f[2] == "100000");
        CHECK(f[6] == "true");
        CHECK(to_double(f[3]) == dkw_epsilon(100000, 0.01));
    }
    CHECK(split(lines[3], ',')[0] == "clayton");
    CHECK(split(lines[3], ',')[1] == "2.5");
    CHECK(r.out == invoke({"verify"}).out);

    const auto bad = invoke({"verify", "--fault-shift-upper", "0.05"});
    CHECK(bad.code == kExitInvalid);
    CHECK(bad.out.find(",false") != std::string::npos);

    const auto cfg = scratch("empty-models.cfg");
    write_file(cfg, "models =\n");
    const auto empty = invoke({"verify", "--config", cfg.string()});
    CHECK(empty.code == kExitInvalid);
    CHECK(empty.err.find("Usage") != std::string::npos);
}

TEST_CASE("figure presets draw four series inside the bounds")
{
    for (const char* preset : {"figure1", "figure2"}) {
        CAPTURE(preset);
        const auto path = scratch(std::string(preset) + ".svg");
        const auto r = invoke({"figure", "--preset", preset, "--out", path.string()});
        REQUIRE(r.code == 0);
        const std::string svg = slurp(path);
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("</svg>") != std::string::npos);
        CHECK(count_of(svg, "<polyline") == 4);
        CHECK(svg == invoke({"figure", "--preset", preset}).out);

        // Data-level check: each model curve sits within the bounds +- epsilon.
        RunConfig c;
        c.models = preset_models(preset);
        const FigureData fig = build_figure(c);
        REQUIRE(fig.series.size() == 4);
        for (std::size_t s = 2; s < 4; ++s) {
            for (std::size_t i = 0; i < fig.series[s].y.size(); ++i) {
                CHECK(fig.series[s].y[i] >= fig.series[0].y[i] - fig.epsilon);
                CHECK(fig.series[s].y[i] <= fig.series[1].y[i] + fig.epsilon);
            }
        }

        // Same check on the drawn polylines (y grows downward in SVG).
        const auto lo = polyline_points(svg, 0);
        const auto hi = polyline_points(svg, 1);
        for (std::size_t s = 2; s < 4; ++s) {
            const auto pts = polyline_points(svg, s);
            REQUIRE(pts.size() == lo.size());
            for (std::size_t i = 0; i < pts.size(); ++i) {
                CHECK(pts[i].first == doctest::Approx(lo[i].first));
                // 400 px per unit probability; 0.01 covers the two-decimal rounding.
                CHECK(pts[i].second <= lo[i].second + 400.0 * fig.epsilon + 0.01);
                CHECK(pts[i].second >= hi[i].second - 400.0 * fig.epsilon - 0.01);
            }
        }
    }
}

TEST_CASE("figure csv output")
{
    const auto r = invoke({"figure", "--preset", "figure1", "--format", "csv", "--z-points", "20"});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 21);
    CHECK(split(lines[0], ',').size() == 5);
}
