#include "audio/pitch.hpp"

#include <cmath>
#include <stdexcept>

#include "audio/features.hpp"
#include "audio/stft.hpp"

namespace gg::audio {

double adjust_pitch(double f0_hz) { return std::max(0.0, std::log(f0_hz + 1.0) - 4.0); }

double adjust_intensity(double intensity) { return std::log(std::max(intensity, kLogFloor)) - 3.0; }

std::vector<double> energy_contour(const AudioBuffer& audio, double hop_s) {
    const int win = static_cast<int>(std::lround(0.005 * audio.sample_rate));
    const int hop = static_cast<int>(std::lround(hop_s * audio.sample_rate));
    const int frames = frame_count(static_cast<int>(audio.samples.size()), win, hop);
    if (frames <= 0) throw std::invalid_argument("energy_contour: audio shorter than one window");
    std::vector<double> rms(frames);
    for (int t = 0; t < frames; ++t) {
        const double* x = audio.samples.data() + static_cast<std::size_t>(t) * hop;
        double s = 0.0;
        for (int i = 0; i < win; ++i) s += x[i] * x[i];
        rms[t] = std::sqrt(s / win);
    }
    return rms;
}

std::vector<double> f0_contour(const AudioBuffer& audio, double hop_s) {
    const int sr = audio.sample_rate;
    const int win = static_cast<int>(std::lround(kPitchWindowS * sr));
    const int hop = static_cast<int>(std::lround(hop_s * sr));
    const int n = static_cast<int>(audio.samples.size());
    const int frames = frame_count(n, win, hop);
    if (frames <= 0) throw std::invalid_argument("f0_contour: audio shorter than 0.04 s");

    const int lag_min = static_cast<int>(std::floor(sr / kPitchMaxHz));
    const int lag_max = static_cast<int>(std::ceil(sr / kPitchMinHz));
    if (lag_max >= win) throw std::invalid_argument("f0_contour: window too short for 60 Hz search");

    std::vector<double> f0(frames, 0.0);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < frames; ++t) {
        const double* x = audio.samples.data() + static_cast<std::size_t>(t) * hop;
        double mean = 0.0;
        for (int i = 0; i < win; ++i) mean += x[i];
        mean /= win;

        // Normalized autocorrelation over the overlapping region.
        double best_r = 0.0;
        std::vector<double> rbuf(lag_max + 2, 0.0);
        for (int lag = lag_min; lag <= lag_max; ++lag) {
            double num = 0.0, e0 = 0.0, e1 = 0.0;
            const int m = win - lag;
            for (int i = 0; i < m; ++i) {
                const double a = x[i] - mean;
                const double b = x[i + lag] - mean;
                num += a * b;
                e0 += a * a;
                e1 += b * b;
            }
            const double denom = std::sqrt(e0 * e1);
            const double r = denom > 1e-12 ? num / denom : 0.0;
            rbuf[lag] = r;
            if (r > best_r) best_r = r;
        }
        if (best_r < kVoicingThreshold) continue;

        // Integer multiples of the true period score nearly as high as the
        // period itself (sometimes higher when the true lag is not close to
        // an integer), so take the smallest local maximum that comes close
        // to the global one.
        int best_lag = 0;
        for (int lag = lag_min; lag <= lag_max; ++lag) {
            const double prev = lag > lag_min ? rbuf[lag - 1] : -2.0;
            const double next = lag < lag_max ? rbuf[lag + 1] : -2.0;
            if (rbuf[lag] >= prev && rbuf[lag] >= next && rbuf[lag] >= 0.85 * best_r &&
                rbuf[lag] >= kVoicingThreshold) {
                best_lag = lag;
                break;
            }
        }
        if (best_lag == 0) continue;

        // Parabolic refinement of the peak lag.
        double lag = best_lag;
        if (best_lag > lag_min && best_lag < lag_max) {
            const double ym = rbuf[best_lag - 1], y0 = rbuf[best_lag], yp = rbuf[best_lag + 1];
            const double denom = ym - 2.0 * y0 + yp;
            if (std::fabs(denom) > 1e-12) {
                const double delta = 0.5 * (ym - yp) / denom;
                if (std::fabs(delta) <= 1.0) lag += delta;
            }
        }
        const double hz = sr / lag;
        if (hz >= kPitchMinHz && hz <= kPitchMaxHz) f0[t] = hz;
    }
    return f0;
}

namespace {

// Forward finite difference; the last frame repeats the previous delta.
std::vector<double> forward_delta(const std::vector<double>& x) {
    const int t = static_cast<int>(x.size());
    std::vector<double> d(t, 0.0);
    if (t < 2) return d;
    for (int i = 0; i + 1 < t; ++i) d[i] = x[i + 1] - x[i];
    d[t - 1] = d[t - 2];
    return d;
}

}  // namespace

FeatureSequence prosodic_features(const AudioBuffer& audio) {
    std::vector<double> energy = energy_contour(audio);
    std::vector<double> pitch = f0_contour(audio);
    // The pitch window (0.04 s) is longer than the energy window, so it
    // yields fewer frames; align on the shorter track.
    const int t = static_cast<int>(std::min(energy.size(), pitch.size()));
    if (t <= 0) throw std::invalid_argument("prosodic_features: audio too short");

    std::vector<double> e_adj(t), p_adj(t);
    for (int i = 0; i < t; ++i) {
        e_adj[i] = adjust_intensity(energy[i]);
        p_adj[i] = adjust_pitch(pitch[i]);
    }
    const std::vector<double> de = forward_delta(e_adj);
    const std::vector<double> dp = forward_delta(p_adj);

    FeatureSequence fs;
    fs.kind = FeatureKind::Prosodic;
    fs.fps = 200.0;
    fs.data = Matrix(t, 4);
    for (int i = 0; i < t; ++i) {
        fs.data(i, 0) = e_adj[i];
        fs.data(i, 1) = de[i];
        fs.data(i, 2) = p_adj[i];
        fs.data(i, 3) = dp[i];
    }
    return fs;
}

}  // namespace gg::audio
