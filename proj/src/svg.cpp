#include "boa/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace boa {

namespace {

constexpr double kPanelW = 420.0, kPanelH = 320.0;
constexpr double kMarginL = 70.0, kMarginT = 40.0, kMarginB = 60.0;
constexpr double kPanelGap = 80.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string fmt(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v,
                                   std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string fmt_tick(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

struct Panel {
    double x0;           // left edge of the plot area
    bool log_y;
    double ymin, ymax;   // data range (already log10 if log_y)

    double px(double proportion) const {
        return x0 + proportion * kPanelW;
    }
    double py(double value) const {
        const double v = log_y ? std::log10(value) : value;
        return kMarginT + kPanelH - (v - ymin) / (ymax - ymin) * kPanelH;
    }
};

void panel_frame(std::string& svg, const Panel& panel, const std::string& y_label) {
    svg += "<rect x=\"" + fmt(panel.x0) + "\" y=\"" + fmt(kMarginT) +
           "\" width=\"" + fmt(kPanelW) + "\" height=\"" + fmt(kPanelH) +
           "\" fill=\"none\" stroke=\"#333\"/>\n";
    // x ticks at 0, 0.25, 0.5, 0.75, 1
    for (int t = 0; t <= 4; ++t) {
        const double p = t / 4.0;
        const double x = panel.px(p);
        svg += "<line x1=\"" + fmt(x) + "\" y1=\"" + fmt(kMarginT + kPanelH) +
               "\" x2=\"" + fmt(x) + "\" y2=\"" + fmt(kMarginT + kPanelH + 5) +
               "\" stroke=\"#333\"/>\n";
        svg += "<text x=\"" + fmt(x) + "\" y=\"" + fmt(kMarginT + kPanelH + 20) +
               "\" font-size=\"11\" text-anchor=\"middle\">" + fmt_tick(p) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(panel.x0 + kPanelW / 2) + "\" y=\"" +
           fmt(kMarginT + kPanelH + 42) +
           "\" font-size=\"13\" text-anchor=\"middle\">inheritance proportion</text>\n";
    // y ticks
    std::vector<double> ticks;
    if (panel.log_y) {
        for (int e = static_cast<int>(std::floor(panel.ymin));
             e <= static_cast<int>(std::ceil(panel.ymax)); ++e)
            if (e >= panel.ymin - 1e-9 && e <= panel.ymax + 1e-9)
                ticks.push_back(static_cast<double>(e));
        if (ticks.empty()) ticks = {panel.ymin, panel.ymax};
    } else {
        for (int t = 0; t <= 4; ++t)
            ticks.push_back(panel.ymin + (panel.ymax - panel.ymin) * t / 4.0);
    }
    for (double tick : ticks) {
        const double y = kMarginT + kPanelH -
                         (tick - panel.ymin) / (panel.ymax - panel.ymin) * kPanelH;
        svg += "<line x1=\"" + fmt(panel.x0 - 5) + "\" y1=\"" + fmt(y) +
               "\" x2=\"" + fmt(panel.x0) + "\" y2=\"" + fmt(y) +
               "\" stroke=\"#333\"/>\n";
        const double label = panel.log_y ? std::pow(10.0, tick) : tick;
        svg += "<text x=\"" + fmt(panel.x0 - 8) + "\" y=\"" + fmt(y + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + fmt_tick(label) +
               "</text>\n";
    }
    svg += "<text x=\"" + fmt(panel.x0 - 50) + "\" y=\"" +
           fmt(kMarginT + kPanelH / 2) +
           "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           fmt(panel.x0 - 50) + " " + fmt(kMarginT + kPanelH / 2) + ")\">" +
           y_label + "</text>\n";
}

void panel_series(std::string& svg, const Panel& panel,
                  const std::vector<SpeedupSeries>& series, bool use_speedup) {
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        const auto& points = series[s].points;
        if (points.size() > 1) {
            svg += "<polyline fill=\"none\" stroke=\"";
            svg += color;
            svg += "\" stroke-width=\"1.5\" points=\"";
            for (const auto& point : points) {
                svg += fmt(panel.px(point.proportion));
                svg += ',';
                svg += fmt(panel.py(use_speedup ? point.speedup : point.mean_evaluations));
                svg += ' ';
            }
            if (svg.back() == ' ') svg.pop_back();
            svg += "\"/>\n";
        }
        for (const auto& point : points) {
            svg += "<circle cx=\"" + fmt(panel.px(point.proportion)) + "\" cy=\"" +
                   fmt(panel.py(use_speedup ? point.speedup : point.mean_evaluations)) +
                   "\" r=\"3\" fill=\"";
            svg += color;
            svg += "\"/>\n";
        }
    }
}

}  // namespace

std::string render_speedup_svg(const std::vector<SpeedupSeries>& series) {
    bool any = false;
    for (const auto& s : series) any = any || !s.points.empty();
    if (!any)
        throw std::invalid_argument("render_speedup_svg: no points to draw");

    double eval_min = 0, eval_max = 0, sp_min = 0, sp_max = 0;
    bool init = false;
    for (const auto& s : series) {
        for (const auto& point : s.points) {
            if (point.mean_evaluations <= 0.0 || point.speedup <= 0.0)
                throw std::invalid_argument("render_speedup_svg: values must be positive");
            if (!init) {
                eval_min = eval_max = point.mean_evaluations;
                sp_min = sp_max = point.speedup;
                init = true;
            } else {
                eval_min = std::min(eval_min, point.mean_evaluations);
                eval_max = std::max(eval_max, point.mean_evaluations);
                sp_min = std::min(sp_min, point.speedup);
                sp_max = std::max(sp_max, point.speedup);
            }
        }
    }
    // Pad degenerate ranges so the scale stays finite.
    double lo = std::log10(eval_min), hi = std::log10(eval_max);
    if (hi - lo < 1e-9) { lo -= 0.5; hi += 0.5; }
    if (sp_max - sp_min < 1e-9) { sp_min -= 0.5; sp_max += 0.5; }

    const double width = kMarginL + kPanelW + kPanelGap + kPanelW + 40.0;
    const double height = kMarginT + kPanelH + kMarginB;
    std::string svg = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) +
           "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " +
           fmt(height) + "\" font-family=\"sans-serif\">\n";

    const Panel evals{kMarginL, true, lo, hi};
    const Panel speed{kMarginL + kPanelW + kPanelGap, false, sp_min, sp_max};
    panel_frame(svg, evals, "mean actual evaluations");
    panel_frame(svg, speed, "speedup");
    panel_series(svg, evals, series, false);
    panel_series(svg, speed, series, true);

    // Legend along the top.
    double lx = kMarginL;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
        svg += "<circle cx=\"" + fmt(lx) + "\" cy=\"" + fmt(kMarginT - 18) +
               "\" r=\"4\" fill=\"";
        svg += color;
        svg += "\"/>\n<text x=\"" + fmt(lx + 10) + "\" y=\"" + fmt(kMarginT - 14) +
               "\" font-size=\"12\">" + series[s].problem + "</text>\n";
        lx += 18.0 + 8.0 * static_cast<double>(series[s].problem.size()) + 20.0;
    }

    svg += "</svg>\n";
    return svg;
}

void render_speedup_svg(const std::vector<SpeedupSeries>& series,
                        const std::string& path) {
    const std::string svg = render_speedup_svg(series);
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("render_speedup_svg: cannot open " + path);
    file.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    if (!file)
        throw std::runtime_error("render_speedup_svg: write failed for " + path);
}

}  // namespace boa
