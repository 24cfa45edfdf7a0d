#pragma once

#include <vector>

#include "audio/wav.hpp"
#include "core/matrix.hpp"

namespace gg::audio {

// Frame-count law shared by every extractor: frames = floor((N - win)/hop) + 1.
int frame_count(int n_samples, int win, int hop);

int next_pow2(int n);

std::vector<double> hann_window(int n);

// In-place radix-2 FFT over interleaved complex data.
void fft_complex(std::vector<double>& re, std::vector<double>& im);

// Hann-windowed power spectrogram: T x (n_fft/2 + 1), entry = |DFT bin|^2.
// n_fft is the next power of two >= window length, raised to min_fft when
// the caller needs a finer frequency grid than the window provides.
Matrix stft_power(const AudioBuffer& audio, double window_s, double hop_s, int min_fft = 0);

// Triangular mel filterbank. Filters are spaced on the mel scale between
// low_hz and high_hz; bins outside that band carry zero weight.
struct MelFilterbank {
    int n_filters = 0;
    double low_hz = 0.0;
    double high_hz = 0.0;
    Matrix weights;  // n_filters x n_bins

    static MelFilterbank build(int n_filters, double low_hz, double high_hz, int n_fft, int sample_rate);
};

double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Orthonormal DCT-II of each row, keeping n_out coefficients.
Matrix dct2_orthonormal(const Matrix& rows, int n_out);

}  // namespace gg::audio
