#include "audio/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::audio {

namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatIeeeFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct Reader {
    const std::uint8_t* p;
    std::size_t n;
    std::size_t pos = 0;

    void need(std::size_t k, const char* what) const {
        if (pos + k > n) throw std::runtime_error(std::string("malformed WAV header: truncated ") + what);
    }
    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = static_cast<std::uint32_t>(p[pos]) | (p[pos + 1] << 8) | (p[pos + 2] << 16) |
                          (static_cast<std::uint32_t>(p[pos + 3]) << 24);
        pos += 4;
        return v;
    }
    std::uint16_t u16(const char* what) {
        need(2, what);
        std::uint16_t v = static_cast<std::uint16_t>(p[pos] | (p[pos + 1] << 8));
        pos += 2;
        return v;
    }
    void fourcc(char out[5], const char* what) {
        need(4, what);
        std::memcpy(out, p + pos, 4);
        out[4] = '\0';
        pos += 4;
    }
    void skip(std::size_t k, const char* what) {
        need(k, what);
        pos += k;
    }
};

double decode_sample(const std::uint8_t* s, int bits, std::uint16_t fmt) {
    if (fmt == kFormatIeeeFloat) {
        float f;
        std::memcpy(&f, s, 4);
        return static_cast<double>(f);
    }
    switch (bits) {
        case 8:
            // 8-bit WAV is unsigned with midpoint 128.
            return (static_cast<int>(s[0]) - 128) / 128.0;
        case 16: {
            std::int16_t v = static_cast<std::int16_t>(s[0] | (s[1] << 8));
            return v / 32768.0;
        }
        case 24: {
            std::int32_t v = s[0] | (s[1] << 8) | (s[2] << 16);
            if (v & 0x800000) v |= ~0xFFFFFF;  // sign-extend
            return v / 8388608.0;
        }
        default:
            throw std::runtime_error("unsupported WAV codec: " + std::to_string(bits) + "-bit PCM");
    }
}

}  // namespace

AudioBuffer load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    Reader r{bytes.data(), bytes.size()};
    char tag[5];
    r.fourcc(tag, "RIFF tag");
    if (std::strcmp(tag, "RIFF") != 0) throw std::runtime_error("malformed WAV header: not a RIFF file");
    r.u32("RIFF size");
    r.fourcc(tag, "WAVE tag");
    if (std::strcmp(tag, "WAVE") != 0) throw std::runtime_error("malformed WAV header: not a WAVE file");

    bool have_fmt = false;
    std::uint16_t fmt = 0, channels = 0, bits = 0;
    std::uint32_t sample_rate = 0;
    const std::uint8_t* data = nullptr;
    std::uint32_t data_len = 0;

    while (r.pos + 8 <= r.n) {
        r.fourcc(tag, "chunk id");
        std::uint32_t len = r.u32("chunk size");
        if (std::strcmp(tag, "fmt ") == 0) {
            if (len < 16) throw std::runtime_error("malformed WAV header: fmt chunk too short");
            std::size_t end = r.pos + len;
            fmt = r.u16("format tag");
            channels = r.u16("channel count");
            sample_rate = r.u32("sample rate");
            r.u32("byte rate");
            r.u16("block align");
            bits = r.u16("bits per sample");
            if (fmt == kFormatExtensible && len >= 40) {
                r.skip(8, "extension header");
                fmt = r.u16("extensible format tag");
            }
            r.pos = end;
            if (len & 1) r.skip(1, "chunk padding");
            have_fmt = true;
        } else if (std::strcmp(tag, "data") == 0) {
            r.need(len, "data chunk");
            data = r.p + r.pos;
            data_len = len;
            r.pos += len + (len & 1);
        } else {
            r.skip(len + (len & 1), "chunk body");
        }
    }

    if (!have_fmt) throw std::runtime_error("malformed WAV header: missing fmt chunk");
    if (data == nullptr) throw std::runtime_error("malformed WAV header: missing data chunk");
    if (fmt != kFormatPcm && fmt != kFormatIeeeFloat)
        throw std::runtime_error("unsupported WAV codec: format tag " + std::to_string(fmt));
    if (fmt == kFormatIeeeFloat && bits != 32)
        throw std::runtime_error("unsupported WAV codec: " + std::to_string(bits) + "-bit float");
    if (fmt == kFormatPcm && bits != 8 && bits != 16 && bits != 24)
        throw std::runtime_error("unsupported WAV codec: " + std::to_string(bits) + "-bit PCM");
    if (channels == 0) throw std::runtime_error("malformed WAV header: zero channels");
    if (sample_rate == 0) throw std::runtime_error("malformed WAV header: zero sample rate");

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t stride = bytes_per_sample * channels;
    const std::size_t frames = data_len / stride;
    if (frames == 0) throw std::runtime_error("zero-length audio in " + path);

    AudioBuffer out;
    out.sample_rate = static_cast<int>(sample_rate);
    out.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c)
            acc += decode_sample(data + i * stride + c * bytes_per_sample, bits, fmt);
        out.samples[i] = acc / channels;
    }
    return out;
}

void write_wav_pcm16(const std::string& path, const AudioBuffer& audio) {
    if (audio.samples.empty()) throw std::runtime_error("refusing to write zero-length WAV");
    const std::uint32_t n = static_cast<std::uint32_t>(audio.samples.size());
    const std::uint32_t data_len = n * 2;
    std::string buf;
    buf.reserve(44 + data_len);
    auto put_u32 = [&buf](std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    };
    auto put_u16 = [&buf](std::uint16_t v) {
        buf.push_back(static_cast<char>(v & 0xFF));
        buf.push_back(static_cast<char>((v >> 8) & 0xFF));
    };
    buf += "RIFF";
    put_u32(36 + data_len);
    buf += "WAVE";
    buf += "fmt ";
    put_u32(16);
    put_u16(kFormatPcm);
    put_u16(1);
    put_u32(static_cast<std::uint32_t>(audio.sample_rate));
    put_u32(static_cast<std::uint32_t>(audio.sample_rate) * 2);
    put_u16(2);
    put_u16(16);
    buf += "data";
    put_u32(data_len);
    for (double s : audio.samples) {
        int v = static_cast<int>(std::lround(std::clamp(s, -1.0, 1.0) * 32768.0));
        v = std::clamp(v, -32768, 32767);
        put_u16(static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
    gg::textio::write_file_atomic(path, buf);
}

}  // namespace gg::audio
