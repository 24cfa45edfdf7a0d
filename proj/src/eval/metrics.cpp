#include "eval/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::eval {

double ape(const motion::MotionSequence& truth, const motion::MotionSequence& pred) {
    if (truth.frames() != pred.frames() || truth.joints != pred.joints)
        throw std::invalid_argument("ape: shape mismatch (" + std::to_string(truth.frames()) + "x" +
                                    std::to_string(truth.joints) + " vs " + std::to_string(pred.frames()) + "x" +
                                    std::to_string(pred.joints) + ")");
    if (truth.fps != pred.fps) throw std::invalid_argument("ape: framerate mismatch");
    if (truth.frames() == 0) throw std::invalid_argument("ape: empty sequences");

    double total = 0.0;
    for (int t = 0; t < truth.frames(); ++t) {
        for (int j = 0; j < truth.joints; ++j) {
            const double* a = truth.joint(t, j);
            const double* b = pred.joint(t, j);
            const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
            total += std::sqrt(dx * dx + dy * dy + dz * dz);
        }
    }
    return total / (static_cast<double>(truth.frames()) * truth.joints);
}

Matrix derivative_magnitudes(const motion::MotionSequence& m, int order) {
    if (order < 1) throw std::invalid_argument("derivative_magnitudes: order must be >= 1");
    if (m.frames() <= order)
        throw std::invalid_argument("derivative_magnitudes: sequence too short for order " + std::to_string(order));

    Matrix diff = m.positions;
    for (int o = 0; o < order; ++o) {
        Matrix next(diff.rows() - 1, diff.cols());
        for (int t = 0; t + 1 < diff.rows(); ++t) {
            const double* a = diff.row(t);
            const double* b = diff.row(t + 1);
            double* o_row = next.row(t);
            for (int k = 0; k < diff.cols(); ++k) o_row[k] = b[k] - a[k];
        }
        diff = std::move(next);
    }

    Matrix mags(diff.rows(), m.joints);
    for (int t = 0; t < diff.rows(); ++t) {
        const double* row = diff.row(t);
        double* o_row = mags.row(t);
        for (int j = 0; j < m.joints; ++j) {
            const double x = row[3 * j], y = row[3 * j + 1], z = row[3 * j + 2];
            o_row[j] = std::sqrt(x * x + y * y + z * z);
        }
    }
    return mags;
}

double avg_stat(const motion::MotionSequence& m, int order, const std::vector<int>& joints) {
    const Matrix mags = derivative_magnitudes(m, order);
    double total = 0.0;
    std::size_t count = 0;
    for (int t = 0; t < mags.rows(); ++t) {
        const double* row = mags.row(t);
        if (joints.empty()) {
            for (int j = 0; j < mags.cols(); ++j) total += row[j];
            count += mags.cols();
        } else {
            for (int j : joints) {
                if (j < 0 || j >= mags.cols()) throw std::invalid_argument("avg_stat: joint index out of range");
                total += row[j];
            }
            count += joints.size();
        }
    }
    return total / static_cast<double>(count);
}

namespace {

std::string lower(const std::string& s) {
    std::string out;
    for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return out;
}

bool matches_any(const std::string& name, const std::string& patterns) {
    const std::string low = lower(name);
    for (const auto& pat : textio::split(patterns, '|'))
        if (!pat.empty() && low.find(lower(pat)) != std::string::npos) return true;
    return false;
}

}  // namespace

JointGroup resolve_group(const motion::Skeleton& skel, const std::string& group_name,
                         const std::string& hands_pattern, const std::string& shoulders_pattern) {
    JointGroup g;
    g.name = group_name;
    if (group_name == "all") return g;
    const std::string& pattern = [&]() -> const std::string& {
        if (group_name == "hands") return hands_pattern;
        if (group_name == "shoulders") return shoulders_pattern;
        throw std::invalid_argument("unknown joint group '" + group_name + "'");
    }();
    for (int j = 0; j < skel.joint_count(); ++j)
        if (matches_any(skel.joints[j].name, pattern)) g.indices.push_back(j);
    if (g.indices.empty())
        throw std::runtime_error("joint group '" + group_name + "' matched no joints in the skeleton");
    return g;
}

Histogram acceleration_histogram(const std::vector<const motion::MotionSequence*>& sequences,
                                 const JointGroup& group, double bin_width) {
    if (bin_width <= 0.0) throw std::invalid_argument("acceleration_histogram: bin width must be positive");
    std::vector<double> pool;
    for (const auto* m : sequences) {
        const Matrix mags = derivative_magnitudes(*m, 2);
        for (int t = 0; t < mags.rows(); ++t) {
            const double* row = mags.row(t);
            if (group.indices.empty()) {
                for (int j = 0; j < mags.cols(); ++j) pool.push_back(row[j]);
            } else {
                for (int j : group.indices) {
                    if (j < 0 || j >= mags.cols())
                        throw std::invalid_argument("acceleration_histogram: joint index out of range");
                    pool.push_back(row[j]);
                }
            }
        }
    }
    if (pool.empty()) throw std::invalid_argument("acceleration_histogram: empty sample pool");

    const double max_value = *std::max_element(pool.begin(), pool.end());
    const int bins = std::max(1, static_cast<int>(std::floor(max_value / bin_width)) + 1);
    Histogram h;
    h.bin_width = bin_width;
    h.sample_count = pool.size();
    h.left_edges.resize(bins);
    h.rel_freq.assign(bins, 0.0);
    for (int k = 0; k < bins; ++k) h.left_edges[k] = k * bin_width;
    for (double v : pool) {
        int k = static_cast<int>(std::floor(v / bin_width));
        if (k >= bins) k = bins - 1;
        h.rel_freq[k] += 1.0;
    }
    for (double& f : h.rel_freq) f /= static_cast<double>(pool.size());
    return h;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty sample");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace gg::eval
