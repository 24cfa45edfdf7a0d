#include "audio/features.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "audio/pitch.hpp"
#include "core/textio.hpp"

namespace gg::audio {

std::string kind_name(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Mfcc: return "MFCC";
        case FeatureKind::Spectrogram: return "Spectrogram";
        case FeatureKind::Prosodic: return "Prosodic";
        case FeatureKind::MfccPros: return "MFCC+Pros";
        case FeatureKind::SpectrPros: return "Spectr+Pros";
    }
    throw std::logic_error("kind_name: bad enum");
}

FeatureKind kind_from_name(const std::string& name) {
    std::string low;
    for (char c : name) low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (low == "mfcc") return FeatureKind::Mfcc;
    if (low == "spectrogram") return FeatureKind::Spectrogram;
    if (low == "prosodic") return FeatureKind::Prosodic;
    if (low == "mfcc+pros") return FeatureKind::MfccPros;
    if (low == "spectr+pros") return FeatureKind::SpectrPros;
    throw std::runtime_error("unknown feature kind '" + name + "'");
}

int kind_dims(FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Mfcc: return 26;
        case FeatureKind::Spectrogram: return 64;
        case FeatureKind::Prosodic: return 4;
        case FeatureKind::MfccPros: return 30;
        case FeatureKind::SpectrPros: return 68;
    }
    throw std::logic_error("kind_dims: bad enum");
}

void FeatureSequence::validate() const {
    if (data.cols() != kind_dims(kind))
        throw std::runtime_error("feature sequence width " + std::to_string(data.cols()) + " does not match kind " +
                                 kind_name(kind));
    if (fps <= 0.0) throw std::runtime_error("feature sequence fps must be positive");
    for (std::size_t i = 0; i < data.size(); ++i)
        if (!std::isfinite(data.data()[i])) throw std::runtime_error("non-finite feature value");
}

namespace {

Matrix mel_log_energies(const AudioBuffer& audio, double window_s, double hop_s, int n_filters, int min_fft) {
    const Matrix power = stft_power(audio, window_s, hop_s, min_fft);
    const int n_fft = 2 * (power.cols() - 1);
    const MelFilterbank fb = MelFilterbank::build(n_filters, kMelLowHz, kMelHighHz, n_fft, audio.sample_rate);
    Matrix mel(power.rows(), n_filters);
#pragma omp parallel for schedule(static)
    for (int t = 0; t < power.rows(); ++t) {
        const double* p = power.row(t);
        double* out = mel.row(t);
        for (int f = 0; f < n_filters; ++f) {
            const double* w = fb.weights.row(f);
            double s = 0.0;
            for (int b = 0; b < power.cols(); ++b) s += w[b] * p[b];
            out[f] = std::log(std::max(s, kLogFloor));
        }
    }
    return mel;
}

}  // namespace

FeatureSequence mfcc(const AudioBuffer& audio) {
    Matrix mel = mel_log_energies(audio, 0.02, 0.01, kMfccFilters, 0);
    FeatureSequence fs;
    fs.data = dct2_orthonormal(mel, kMfccCoeffs);
    fs.fps = 100.0;
    fs.kind = FeatureKind::Mfcc;
    return fs;
}

FeatureSequence spectrogram64(const AudioBuffer& audio) {
    // 0.005 s at 16 kHz is only 80 samples; the filterbank needs a finer
    // DFT grid than that or most of the 64 bands fall between bins, so the
    // window is zero-padded to at least 512 points.
    FeatureSequence fs;
    fs.data = mel_log_energies(audio, 0.005, 0.005, kSpectrogramBands, 512);
    fs.fps = 200.0;
    fs.kind = FeatureKind::Spectrogram;
    return fs;
}

FeatureSequence downsample_avg(const FeatureSequence& fs, int factor) {
    if (factor < 1) throw std::invalid_argument("downsample_avg: factor must be >= 1");
    if (fs.frames() == 0) throw std::invalid_argument("downsample_avg: empty input");
    const int t_in = fs.frames(), d = fs.dims();
    const int t_out = (t_in + factor - 1) / factor;
    FeatureSequence out;
    out.kind = fs.kind;
    out.fps = fs.fps / factor;
    out.data = Matrix(t_out, d);
    for (int j = 0; j < t_out; ++j) {
        const int begin = j * factor;
        const int end = std::min(begin + factor, t_in);
        double* o = out.data.row(j);
        for (int t = begin; t < end; ++t) {
            const double* x = fs.data.row(t);
            for (int k = 0; k < d; ++k) o[k] += x[k];
        }
        const double inv = 1.0 / (end - begin);
        for (int k = 0; k < d; ++k) o[k] *= inv;
    }
    return out;
}

FeatureSequence combine(const FeatureSequence& a, const FeatureSequence& b) {
    if (a.frames() != b.frames())
        throw std::runtime_error("combine: frame counts differ (" + std::to_string(a.frames()) + " vs " +
                                 std::to_string(b.frames()) + ")");
    if (a.fps != b.fps) throw std::runtime_error("combine: framerates differ");
    FeatureKind kind;
    if (a.kind == FeatureKind::Mfcc && b.kind == FeatureKind::Prosodic)
        kind = FeatureKind::MfccPros;
    else if (a.kind == FeatureKind::Spectrogram && b.kind == FeatureKind::Prosodic)
        kind = FeatureKind::SpectrPros;
    else
        throw std::runtime_error("combine: unsupported kind pair " + kind_name(a.kind) + " + " + kind_name(b.kind));
    FeatureSequence out;
    out.kind = kind;
    out.fps = a.fps;
    out.data = Matrix(a.frames(), a.dims() + b.dims());
    for (int t = 0; t < a.frames(); ++t) {
        double* o = out.data.row(t);
        const double* pa = a.data.row(t);
        const double* pb = b.data.row(t);
        for (int k = 0; k < a.dims(); ++k) o[k] = pa[k];
        for (int k = 0; k < b.dims(); ++k) o[a.dims() + k] = pb[k];
    }
    return out;
}

namespace {

void truncate_frames(FeatureSequence& fs, int t) {
    if (fs.frames() == t) return;
    Matrix m(t, fs.dims());
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < fs.dims(); ++k) m(i, k) = fs.data(i, k);
    fs.data = std::move(m);
}

}  // namespace

FeatureSequence extract_at_20fps(const AudioBuffer& audio, FeatureKind kind) {
    switch (kind) {
        case FeatureKind::Mfcc: return downsample_avg(mfcc(audio), 5);
        case FeatureKind::Spectrogram: return downsample_avg(spectrogram64(audio), 10);
        case FeatureKind::Prosodic: return downsample_avg(prosodic_features(audio), 10);
        case FeatureKind::MfccPros:
        case FeatureKind::SpectrPros: {
            FeatureSequence a = extract_at_20fps(
                audio, kind == FeatureKind::MfccPros ? FeatureKind::Mfcc : FeatureKind::Spectrogram);
            FeatureSequence b = extract_at_20fps(audio, FeatureKind::Prosodic);
            // The two extractors can disagree by a frame near the end of the
            // clip; align on the shorter one.
            const int t = std::min(a.frames(), b.frames());
            truncate_frames(a, t);
            truncate_frames(b, t);
            return combine(a, b);
        }
    }
    throw std::logic_error("extract_at_20fps: bad enum");
}

void write_feature_csv(const std::string& path, const FeatureSequence& fs, const std::string& config_note) {
    fs.validate();
    std::ostringstream out;
    out << "# kind=" << kind_name(fs.kind) << " fps=" << textio::format_double(fs.fps) << " dims=" << fs.dims()
        << "\n";
    if (!config_note.empty()) out << "# " << config_note << "\n";
    for (int t = 0; t < fs.frames(); ++t) {
        const double* x = fs.data.row(t);
        for (int k = 0; k < fs.dims(); ++k) {
            if (k) out << ',';
            out << textio::format_double(x[k]);
        }
        out << '\n';
    }
    textio::write_file_atomic(path, out.str());
}

FeatureSequence read_feature_csv(const std::string& path) {
    const auto lines = textio::read_lines(path);
    if (lines.empty() || lines[0].rfind("# kind=", 0) != 0)
        throw std::runtime_error(path + ": missing feature header line");
    std::istringstream hdr(lines[0].substr(2));
    std::string tok;
    std::string kind_str;
    double fps = 0.0;
    int dims = 0;
    while (hdr >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (key == "kind") kind_str = val;
        else if (key == "fps") fps = textio::parse_double(val, path + " header fps");
        else if (key == "dims") dims = static_cast<int>(textio::parse_long(val, path + " header dims"));
    }
    FeatureSequence fs;
    fs.kind = kind_from_name(kind_str);
    fs.fps = fps;

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (line.empty() || line[0] == '#') continue;
        auto cells = textio::split(line, ',');
        if (static_cast<int>(cells.size()) != dims)
            throw std::runtime_error(path + ":" + std::to_string(i + 1) + ": expected " + std::to_string(dims) +
                                     " values, got " + std::to_string(cells.size()));
        std::vector<double> row(cells.size());
        for (std::size_t k = 0; k < cells.size(); ++k)
            row[k] = textio::parse_double(cells[k], path + ":" + std::to_string(i + 1));
        rows.push_back(std::move(row));
    }
    fs.data = Matrix(static_cast<int>(rows.size()), dims);
    for (std::size_t t = 0; t < rows.size(); ++t)
        for (int k = 0; k < dims; ++k) fs.data(static_cast<int>(t), k) = rows[t][k];
    fs.validate();
    return fs;
}

}  // namespace gg::audio
