#pragma once

#include <string>

#include "audio/stft.hpp"
#include "audio/wav.hpp"
#include "core/matrix.hpp"

namespace gg::audio {

enum class FeatureKind { Mfcc, Spectrogram, Prosodic, MfccPros, SpectrPros };

std::string kind_name(FeatureKind kind);
FeatureKind kind_from_name(const std::string& name);
int kind_dims(FeatureKind kind);

// Time-major frame matrix with its framerate and kind tag.
struct FeatureSequence {
    Matrix data;  // T x D
    double fps = 0.0;
    FeatureKind kind = FeatureKind::Mfcc;

    int frames() const { return data.rows(); }
    int dims() const { return data.cols(); }
    void validate() const;
};

// 26 MFCCs, 0.02 s window / 0.01 s hop (100 fps). 40 mel filters over
// [20, 8000] Hz, Hann window, no pre-emphasis, no liftering; log energies
// floored at 1e-10, orthonormal DCT-II keeping coefficients 0..25.
FeatureSequence mfcc(const AudioBuffer& audio);

// 64 log-power mel bands over [20, 8000] Hz, 0.005 s window and hop
// (200 fps), same 1e-10 floor.
FeatureSequence spectrogram64(const AudioBuffer& audio);

// [adjusted log-energy, its delta, adjusted log-F0, its delta] at 200 fps.
FeatureSequence prosodic_features(const AudioBuffer& audio);

// Block means of `factor` consecutive frames; the trailing partial block is
// averaged over its actual length. Output has ceil(T/factor) frames at
// fps/factor.
FeatureSequence downsample_avg(const FeatureSequence& fs, int factor);

// Per-frame concatenation [a_t ; b_t]. Defined for MFCC+Prosodic and
// Spectrogram+Prosodic.
FeatureSequence combine(const FeatureSequence& a, const FeatureSequence& b);

// Extraction at the motion framerate: runs the extractor for `kind` and
// downsamples to 20 fps (factor 5 for MFCC, 10 for the 200 fps features).
FeatureSequence extract_at_20fps(const AudioBuffer& audio, FeatureKind kind);

// CSV: first line "# kind=<kind> fps=<fps> dims=<D>", one frame per row.
void write_feature_csv(const std::string& path, const FeatureSequence& fs, const std::string& config_note = "");
FeatureSequence read_feature_csv(const std::string& path);

constexpr double kLogFloor = 1e-10;
constexpr double kMelLowHz = 20.0;
constexpr double kMelHighHz = 8000.0;
constexpr int kMfccCoeffs = 26;
constexpr int kMfccFilters = 40;
constexpr int kSpectrogramBands = 64;

}  // namespace gg::audio
