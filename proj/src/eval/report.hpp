#pragma once

#include <map>
#include <string>
#include <vector>

#include "eval/metrics.hpp"

namespace gg::eval {

struct ConditionStats {
    std::string name;
    double ape_mean = 0.0, ape_sd = 0.0;
    double acc_mean = 0.0, acc_sd = 0.0;
    double jerk_mean = 0.0, jerk_sd = 0.0;
};

struct HistogramSeries {
    std::string name;
    Histogram histogram;
};

struct EvaluationReport {
    std::vector<ConditionStats> conditions;
    std::vector<HistogramSeries> histograms;
    std::string group_name = "all";
    std::map<std::string, std::string> metadata;  // model id, feature kind, seed, config echo
};

// CSV columns: condition,ape_mean,ape_sd,acc_mean,acc_sd,jerk_mean,jerk_sd.
// Metadata is echoed as leading '#' comment lines.
void write_report_csv(const std::string& path, const EvaluationReport& report);

// Line plot of the histogram series (one polyline per condition).
void write_histogram_svg(const std::string& path, const EvaluationReport& report);

// Generic named series for Fig-4 style charts (e.g. APE against d_z).
struct LineSeries {
    std::string name;
    std::vector<double> x, y, sd;  // sd optional (error whiskers)
};

void write_line_chart_svg(const std::string& path, const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<LineSeries>& series);

}  // namespace gg::eval
