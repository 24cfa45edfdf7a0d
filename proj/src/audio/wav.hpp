#pragma once

#include <string>
#include <vector>

namespace gg::audio {

// Mono waveform, amplitude normalized to [-1, 1].
struct AudioBuffer {
    std::vector<double> samples;
    int sample_rate = 0;

    double duration_s() const {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// Reads a PCM WAV (8/16/24-bit integer or 32-bit float). Stereo and
// multi-channel files are averaged down to mono; integer samples are scaled
// to [-1, 1]. Malformed headers, unsupported codecs and zero-length audio
// are reported as distinct errors.
AudioBuffer load_wav(const std::string& path);

// 16-bit PCM writer used by the synthetic corpus generator.
void write_wav_pcm16(const std::string& path, const AudioBuffer& audio);

}  // namespace gg::audio
