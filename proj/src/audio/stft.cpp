#include "audio/stft.hpp"

#include <cmath>
#include <stdexcept>

namespace gg::audio {

int frame_count(int n_samples, int win, int hop) {
    if (n_samples < win) return 0;
    return (n_samples - win) / hop + 1;
}

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

std::vector<double> hann_window(int n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (int i = 0; i < n; ++i) w[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (n - 1)));
    return w;
}

void fft_complex(std::vector<double>& re, std::vector<double>& im) {
    const std::size_t n = re.size();
    if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("fft_complex: length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) {
            std::swap(re[i], re[j]);
            std::swap(im[i], im[j]);
        }
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * M_PI / static_cast<double>(len);
        const double wr = std::cos(ang), wi = std::sin(ang);
        for (std::size_t i = 0; i < n; i += len) {
            double cr = 1.0, ci = 0.0;
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::size_t a = i + k, b = i + k + len / 2;
                const double tr = re[b] * cr - im[b] * ci;
                const double ti = re[b] * ci + im[b] * cr;
                re[b] = re[a] - tr;
                im[b] = im[a] - ti;
                re[a] += tr;
                im[a] += ti;
                const double ncr = cr * wr - ci * wi;
                ci = cr * wi + ci * wr;
                cr = ncr;
            }
        }
    }
}

Matrix stft_power(const AudioBuffer& audio, double window_s, double hop_s, int min_fft) {
    if (audio.samples.empty()) throw std::invalid_argument("stft_power: empty audio");
    if (audio.sample_rate <= 0) throw std::invalid_argument("stft_power: bad sample rate");
    if (hop_s <= 0.0) throw std::invalid_argument("stft_power: hop must be positive");
    const int win = static_cast<int>(std::lround(window_s * audio.sample_rate));
    const int hop = static_cast<int>(std::lround(hop_s * audio.sample_rate));
    if (win < 2) throw std::invalid_argument("stft_power: window shorter than 2 samples");
    if (hop < 1) throw std::invalid_argument("stft_power: hop shorter than 1 sample");
    const int n = static_cast<int>(audio.samples.size());
    const int frames = frame_count(n, win, hop);
    if (frames <= 0) throw std::invalid_argument("stft_power: audio shorter than one window");

    int n_fft = next_pow2(win);
    if (n_fft < min_fft) n_fft = min_fft;
    const int n_bins = n_fft / 2 + 1;
    const std::vector<double> window = hann_window(win);

    Matrix power(frames, n_bins);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < frames; ++t) {
        std::vector<double> re(n_fft, 0.0), im(n_fft, 0.0);
        const double* x = audio.samples.data() + static_cast<std::size_t>(t) * hop;
        for (int i = 0; i < win; ++i) re[i] = x[i] * window[i];
        fft_complex(re, im);
        double* out = power.row(t);
        for (int k = 0; k < n_bins; ++k) out[k] = re[k] * re[k] + im[k] * im[k];
    }
    return power;
}

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank MelFilterbank::build(int n_filters, double low_hz, double high_hz, int n_fft, int sample_rate) {
    if (n_filters < 1) throw std::invalid_argument("MelFilterbank: need at least one filter");
    const int n_bins = n_fft / 2 + 1;
    MelFilterbank fb;
    fb.n_filters = n_filters;
    fb.low_hz = low_hz;
    fb.high_hz = high_hz;
    fb.weights = Matrix(n_filters, n_bins);

    const double mel_lo = hz_to_mel(low_hz);
    const double mel_hi = hz_to_mel(high_hz);
    std::vector<double> hz_points(n_filters + 2);
    for (int i = 0; i < n_filters + 2; ++i)
        hz_points[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * i / (n_filters + 1));

    for (int f = 0; f < n_filters; ++f) {
        const double lo = hz_points[f], mid = hz_points[f + 1], hi = hz_points[f + 2];
        double* w = fb.weights.row(f);
        for (int b = 0; b < n_bins; ++b) {
            const double hz = static_cast<double>(b) * sample_rate / n_fft;
            if (hz <= lo || hz >= hi) continue;
            w[b] = hz <= mid ? (hz - lo) / (mid - lo) : (hi - hz) / (hi - mid);
        }
    }
    return fb;
}

Matrix dct2_orthonormal(const Matrix& rows, int n_out) {
    const int n_in = rows.cols();
    if (n_out < 1 || n_out > n_in) throw std::invalid_argument("dct2_orthonormal: bad output size");
    Matrix basis(n_out, n_in);
    for (int k = 0; k < n_out; ++k) {
        const double scale = k == 0 ? std::sqrt(1.0 / n_in) : std::sqrt(2.0 / n_in);
        for (int i = 0; i < n_in; ++i) basis(k, i) = scale * std::cos(M_PI * k * (2.0 * i + 1.0) / (2.0 * n_in));
    }
    Matrix out(rows.rows(), n_out);
    for (int t = 0; t < rows.rows(); ++t) {
        const double* x = rows.row(t);
        double* y = out.row(t);
        for (int k = 0; k < n_out; ++k) {
            double s = 0.0;
            const double* b = basis.row(k);
            for (int i = 0; i < n_in; ++i) s += b[i] * x[i];
            y[k] = s;
        }
    }
    return out;
}

}  // namespace gg::audio
