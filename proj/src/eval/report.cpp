#include "eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::eval {

using textio::format_double;

void write_report_csv(const std::string& path, const EvaluationReport& report) {
    if (report.conditions.empty()) throw std::runtime_error("write_report_csv: no conditions to report");
    std::ostringstream out;
    for (const auto& [k, v] : report.metadata) out << "# " << k << '=' << v << '\n';
    out << "condition,ape_mean,ape_sd,acc_mean,acc_sd,jerk_mean,jerk_sd\n";
    for (const auto& c : report.conditions) {
        out << c.name << ',' << format_double(c.ape_mean) << ',' << format_double(c.ape_sd) << ','
            << format_double(c.acc_mean) << ',' << format_double(c.acc_sd) << ',' << format_double(c.jerk_mean) << ','
            << format_double(c.jerk_sd) << '\n';
    }
    textio::write_file_atomic(path, out.str());
}

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 170;
constexpr int kMarginTop = 48;
constexpr int kMarginBottom = 58;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

struct Scale {
    double lo = 0.0, hi = 1.0;
    double px0 = 0.0, px1 = 1.0;
    double map(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

std::string tick_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

void render_chart(std::ostringstream& svg, const std::string& title, const std::string& x_label,
                  const std::string& y_label, const std::vector<LineSeries>& series) {
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double sd = i < s.sd.size() ? s.sd[i] : 0.0;
            if (first) {
                x_lo = x_hi = s.x[i];
                y_lo = s.y[i] - sd;
                y_hi = s.y[i] + sd;
                first = false;
            } else {
                x_lo = std::min(x_lo, s.x[i]);
                x_hi = std::max(x_hi, s.x[i]);
                y_lo = std::min(y_lo, s.y[i] - sd);
                y_hi = std::max(y_hi, s.y[i] + sd);
            }
        }
    }
    if (first) throw std::runtime_error("svg chart: no data points");
    if (x_hi == x_lo) x_hi = x_lo + 1.0;
    if (y_hi == y_lo) y_hi = y_lo + 1.0;
    y_lo = std::min(0.0, y_lo);
    const double y_pad = 0.05 * (y_hi - y_lo);
    y_hi += y_pad;

    Scale xs{x_lo, x_hi, static_cast<double>(kMarginLeft), static_cast<double>(kWidth - kMarginRight)};
    Scale ys{y_lo, y_hi, static_cast<double>(kHeight - kMarginBottom), static_cast<double>(kMarginTop)};

    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
        << "' font-family='sans-serif' font-size='13'>\n";
    svg << "<rect width='" << kWidth << "' height='" << kHeight << "' fill='white'/>\n";
    svg << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='16'>" << xml_escape(title)
        << "</text>\n";

    // axes
    svg << "<line x1='" << xs.px0 << "' y1='" << ys.px0 << "' x2='" << xs.px1 << "' y2='" << ys.px0
        << "' stroke='black'/>\n";
    svg << "<line x1='" << xs.px0 << "' y1='" << ys.px0 << "' x2='" << xs.px0 << "' y2='" << ys.px1
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_lo + (x_hi - x_lo) * i / 5.0;
        const double yv = y_lo + (y_hi - y_lo) * i / 5.0;
        svg << "<line x1='" << xs.map(xv) << "' y1='" << ys.px0 << "' x2='" << xs.map(xv) << "' y2='" << ys.px0 + 5
            << "' stroke='black'/>\n";
        svg << "<text x='" << xs.map(xv) << "' y='" << ys.px0 + 20 << "' text-anchor='middle'>" << tick_label(xv)
            << "</text>\n";
        svg << "<line x1='" << xs.px0 - 5 << "' y1='" << ys.map(yv) << "' x2='" << xs.px0 << "' y2='" << ys.map(yv)
            << "' stroke='black'/>\n";
        svg << "<text x='" << xs.px0 - 8 << "' y='" << ys.map(yv) + 4 << "' text-anchor='end'>" << tick_label(yv)
            << "</text>\n";
    }
    svg << "<text x='" << (xs.px0 + xs.px1) / 2 << "' y='" << kHeight - 14 << "' text-anchor='middle'>"
        << xml_escape(x_label) << "</text>\n";
    svg << "<text x='18' y='" << (ys.px0 + ys.px1) / 2 << "' text-anchor='middle' transform='rotate(-90 18 "
        << (ys.px0 + ys.px1) / 2 << ")'>" << xml_escape(y_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) pts << ' ';
            pts << xs.map(s.x[i]) << ',' << ys.map(s.y[i]);
        }
        svg << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='" << pts.str() << "'/>\n";
        for (std::size_t i = 0; i < s.sd.size() && i < s.x.size(); ++i) {
            if (s.sd[i] <= 0.0) continue;
            const double px = xs.map(s.x[i]);
            svg << "<line x1='" << px << "' y1='" << ys.map(s.y[i] - s.sd[i]) << "' x2='" << px << "' y2='"
                << ys.map(s.y[i] + s.sd[i]) << "' stroke='" << color << "' stroke-width='1'/>\n";
        }
        const double ly = kMarginTop + 18.0 * static_cast<double>(si);
        svg << "<line x1='" << kWidth - kMarginRight + 12 << "' y1='" << ly << "' x2='" << kWidth - kMarginRight + 40
            << "' y2='" << ly << "' stroke='" << color << "' stroke-width='2'/>\n";
        svg << "<text x='" << kWidth - kMarginRight + 46 << "' y='" << ly + 4 << "'>" << xml_escape(s.name)
            << "</text>\n";
    }
    svg << "</svg>\n";
}

}  // namespace

void write_line_chart_svg(const std::string& path, const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<LineSeries>& series) {
    if (series.empty()) throw std::runtime_error("svg chart: no series");
    std::ostringstream svg;
    render_chart(svg, title, x_label, y_label, series);
    textio::write_file_atomic(path, svg.str());
}

void write_histogram_svg(const std::string& path, const EvaluationReport& report) {
    if (report.histograms.empty()) throw std::runtime_error("write_histogram_svg: no histograms");
    std::vector<LineSeries> series;
    for (const auto& h : report.histograms) {
        LineSeries s;
        s.name = h.name;
        for (std::size_t k = 0; k < h.histogram.left_edges.size(); ++k) {
            s.x.push_back(h.histogram.left_edges[k] + 0.5 * h.histogram.bin_width);
            s.y.push_back(h.histogram.rel_freq[k]);
        }
        series.push_back(std::move(s));
    }
    write_line_chart_svg(path, "Acceleration histogram (" + report.group_name + " joints)",
                         "acceleration (units/frame^2)", "relative frequency", series);
}

}  // namespace gg::eval
