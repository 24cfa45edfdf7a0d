#pragma once

#include <unistd.h>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "audio/wav.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace testutil {

inline gg::Matrix random_matrix(int r, int c, gg::Rng& rng, double lo = -1.0, double hi = 1.0) {
    gg::Matrix m(r, c);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(lo, hi);
    return m;
}

inline gg::audio::AudioBuffer sine_audio(double freq_hz, double seconds, int sample_rate, double amp = 0.5) {
    gg::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    const int n = static_cast<int>(std::lround(seconds * sample_rate));
    buf.samples.resize(n);
    for (int i = 0; i < n; ++i) buf.samples[i] = amp * std::sin(2.0 * M_PI * freq_hz * i / sample_rate);
    return buf;
}

inline gg::audio::AudioBuffer sawtooth_audio(double freq_hz, double seconds, int sample_rate, double amp = 0.5) {
    gg::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    const int n = static_cast<int>(std::lround(seconds * sample_rate));
    buf.samples.resize(n);
    double phase = 0.0;
    for (int i = 0; i < n; ++i) {
        phase += freq_hz / sample_rate;
        buf.samples[i] = amp * 2.0 * (phase - std::floor(phase + 0.5));
    }
    return buf;
}

inline gg::audio::AudioBuffer noise_audio(double seconds, int sample_rate, gg::Rng& rng, double amp = 0.5) {
    gg::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    const int n = static_cast<int>(std::lround(seconds * sample_rate));
    buf.samples.resize(n);
    for (int i = 0; i < n; ++i) buf.samples[i] = rng.uniform(-amp, amp);
    return buf;
}

inline gg::audio::AudioBuffer silence_audio(double seconds, int sample_rate) {
    gg::audio::AudioBuffer buf;
    buf.sample_rate = sample_rate;
    buf.samples.assign(static_cast<std::size_t>(std::lround(seconds * sample_rate)), 0.0);
    return buf;
}

// Fresh scratch directory under the system temp root.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = (std::filesystem::temp_directory_path() /
                 ("gg_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++)))
                    .string();
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::string& path() const { return path_; }
    std::string file(const std::string& name) const { return path_ + "/" + name; }

private:
    std::string path_;
};

// Least squares fit y ~ X*beta via normal equations (test-only oracle).
inline std::vector<double> least_squares(const gg::Matrix& X, const std::vector<double>& y) {
    const int n = X.rows(), d = X.cols();
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (int i = 0; i < n; ++i) {
        const double* row = X.row(i);
        for (int p = 0; p < d; ++p) {
            for (int q = 0; q < d; ++q) a[p][q] += row[p] * row[q];
            a[p][d] += row[p] * y[i];
        }
    }
    for (int col = 0; col < d; ++col) {  // Gaussian elimination with partial pivoting
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
        std::swap(a[col], a[piv]);
        for (int r = 0; r < d; ++r) {
            if (r == col || a[col][col] == 0.0) continue;
            const double f = a[r][col] / a[col][col];
            for (int q = col; q <= d; ++q) a[r][q] -= f * a[col][q];
        }
    }
    std::vector<double> beta(d, 0.0);
    for (int p = 0; p < d; ++p) beta[p] = a[p][p] != 0.0 ? a[p][d] / a[p][p] : 0.0;
    return beta;
}

inline double r_squared(const gg::Matrix& X, const std::vector<double>& y) {
    const std::vector<double> beta = least_squares(X, y);
    double mean = 0.0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(y.size());
    double ss_res = 0.0, ss_tot = 0.0;
    for (int i = 0; i < X.rows(); ++i) {
        double pred = 0.0;
        for (int p = 0; p < X.cols(); ++p) pred += X(i, p) * beta[p];
        ss_res += (y[i] - pred) * (y[i] - pred);
        ss_tot += (y[i] - mean) * (y[i] - mean);
    }
    return 1.0 - ss_res / ss_tot;
}

}  // namespace testutil
