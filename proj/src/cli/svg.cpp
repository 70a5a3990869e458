#include "sumbound/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <sstream>

namespace sumbound::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 770.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 450.0;

constexpr std::array<const char*, 6> kPalette{"#1f77b4", "#d62728", "#2ca02c",
                                              "#9467bd", "#ff7f0e", "#8c564b"};

// Pixel coordinates with two decimals.
std::string px(double v)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

std::string escape(std::string_view s)
{
    std::string out;
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Style {
    const char* color;
    const char* dash;
    double width;
};

Style style_for(std::size_t i)
{
    if (i == 0) {
        return {"#000000", "6,4", 2.0};
    }
    if (i == 1) {
        return {"#000000", "", 2.0};
    }
    return {kPalette[(i - 2) % kPalette.size()], "", 1.5};
}

} // namespace

std::string render_svg(const FigureData& figure)
{
    double x_lo = std::numeric_limits<double>::infinity();
    double x_hi = -x_lo;
    for (const auto& s : figure.series) {
        for (const double x : s.x) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
        }
    }
    if (!(x_lo < x_hi)) {
        x_lo = 0.0;
        x_hi = 1.0;
    }
    auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * (kRight - kLeft); };
    auto sy = [&](double y) { return kBottom - y * (kBottom - kTop); };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(kWidth)
      << "\" height=\"" << px(kHeight) << "\" viewBox=\"0 0 " << px(kWidth) << ' ' << px(kHeight)
      << "\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << px(kWidth) << "\" height=\"" << px(kHeight)
      << "\" fill=\"#ffffff\"/>\n"
      << "<text x=\"" << px(0.5 * kWidth) << "\" y=\"28.00\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(figure.title) << "</text>\n";

    // Axes and ticks.
    o << "<g stroke=\"#000000\" stroke-width=\"1\">\n"
      << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(kRight)
      << "\" y2=\"" << px(kBottom) << "\"/>\n"
      << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(kLeft)
      << "\" y2=\"" << px(kBottom) << "\"/>\n";
    for (int k = 0; k <= 4; ++k) {
        const double y = sy(0.25 * k);
        const double x = kLeft + 0.25 * k * (kRight - kLeft);
        o << "<line x1=\"" << px(kLeft - 5) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft)
          << "\" y2=\"" << px(y) << "\"/>\n"
          << "<line x1=\"" << px(x) << "\" y1=\"" << px(kBottom) << "\" x2=\"" << px(x)
          << "\" y2=\"" << px(kBottom + 5) << "\"/>\n";
    }
    o << "</g>\n<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (int k = 0; k <= 4; ++k) {
        const double frac = 0.25 * k;
        o << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(sy(frac) + 4)
          << "\" text-anchor=\"end\">" << format_number(frac, 3) << "</text>\n"
          << "<text x=\"" << px(kLeft + frac * (kRight - kLeft)) << "\" y=\""
          << px(kBottom + 20) << "\" text-anchor=\"middle\">"
          << format_number(x_lo + frac * (x_hi - x_lo), 4) << "</text>\n";
    }
    o << "<text x=\"" << px(0.5 * (kLeft + kRight)) << "\" y=\"" << px(kBottom + 45)
      << "\" text-anchor=\"middle\">z</text>\n"
      << "<text x=\"20.00\" y=\"" << px(0.5 * (kTop + kBottom))
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 20.00 " << px(0.5 * (kTop + kBottom))
      << ")\">P(X + Y &lt;= z)</text>\n</g>\n";

    // Data series.
    for (std::size_t i = 0; i < figure.series.size(); ++i) {
        const auto& s = figure.series[i];
        const Style st = style_for(i);
        o << "<polyline fill=\"none\" stroke=\"" << st.color << "\" stroke-width=\""
          << px(st.width) << '"';
        if (*st.dash != '\0') {
            o << " stroke-dasharray=\"" << st.dash << '"';
        }
        o << " points=\"";
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            o << (k ? " " : "") << px(sx(s.x[k])) << ',' << px(sy(s.y[k]));
        }
        o << "\"/>\n";
    }

    // Legend.
    o << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
    for (std::size_t i = 0; i < figure.series.size(); ++i) {
        const Style st = style_for(i);
        const double y = kTop + 15.0 + 18.0 * static_cast<double>(i);
        o << "<line x1=\"" << px(kLeft + 15) << "\" y1=\"" << px(y) << "\" x2=\""
          << px(kLeft + 45) << "\" y2=\"" << px(y) << "\" stroke=\"" << st.color
          << "\" stroke-width=\"" << px(st.width) << '"';
        if (*st.dash != '\0') {
            o << " stroke-dasharray=\"" << st.dash << '"';
        }
        o << "/>\n<text x=\"" << px(kLeft + 52) << "\" y=\"" << px(y + 4) << "\">"
          << escape(figure.series[i].label) << "</text>\n";
    }
    o << "</g>\n</svg>\n";
    return o.str();
}

} // namespace sumbound::cli
