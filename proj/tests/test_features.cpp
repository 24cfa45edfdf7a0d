#include <doctest.h>

#include <cmath>

#include "audio/features.hpp"
#include "audio/pitch.hpp"
#include "audio/stft.hpp"
#include "audio_oracle.hpp"
#include "helpers.hpp"

using namespace gg;
using namespace gg::audio;

TEST_CASE("frame-count law: frames = floor((N - win)/hop) + 1") {
    CHECK(frame_count(16000, 320, 160) == 99);
    CHECK(frame_count(319, 320, 160) == 0);
    CHECK(frame_count(320, 320, 160) == 1);
    Rng rng(4);
    for (int i = 0; i < 50; ++i) {
        const int win = 2 + rng.uniform_int(500);
        const int hop = 1 + rng.uniform_int(300);
        const int n = win + rng.uniform_int(5000);
        int expected = 0;
        for (int start = 0; start + win <= n; start += hop) ++expected;  // direct enumeration
        CHECK(frame_count(n, win, hop) == expected);
    }
}

TEST_CASE("stft_power frame counts and zero input") {
    const AudioBuffer silence = testutil::silence_audio(1.0, 16000);
    const Matrix p = stft_power(silence, 0.02, 0.01);
    CHECK(p.rows() == 99);
    CHECK(p.cols() == 512 / 2 + 1);
    for (std::size_t i = 0; i < p.size(); ++i) CHECK(p.data()[i] == 0.0);
}

TEST_CASE("stft_power: 1 kHz sine peaks at the expected bin in every frame") {
    const AudioBuffer sine = testutil::sine_audio(1000.0, 0.5, 16000);
    const Matrix p = stft_power(sine, 0.02, 0.01);
    const int n_fft = 2 * (p.cols() - 1);
    const int expected_bin = static_cast<int>(std::lround(1000.0 * n_fft / 16000.0));
    for (int t = 0; t < p.rows(); ++t) {
        int argmax = 0;
        for (int k = 1; k < p.cols(); ++k)
            if (p(t, k) > p(t, argmax)) argmax = k;
        CHECK(argmax == expected_bin);
    }
}

TEST_CASE("stft_power matches the brute-force DFT oracle") {
    Rng rng(21);
    const AudioBuffer noise = testutil::noise_audio(0.1, 16000, rng);
    const Matrix fast = stft_power(noise, 0.02, 0.01);
    const Matrix slow = oracle::stft_power(noise, 320, 160, 512);
    REQUIRE(fast.same_shape(slow));
    for (int t = 0; t < fast.rows(); ++t)
        for (int k = 0; k < fast.cols(); ++k) {
            const double denom = std::max({std::fabs(slow(t, k)), 1e-9});
            CHECK(std::fabs(fast(t, k) - slow(t, k)) / denom < 1e-9);
        }
}

TEST_CASE("stft_power rejects audio shorter than one window") {
    const AudioBuffer tiny = testutil::silence_audio(0.01, 16000);
    CHECK_THROWS_AS(stft_power(tiny, 0.02, 0.01), std::invalid_argument);
}

TEST_CASE("mel filterbank: triangular, non-negative, zero outside 20-8000 Hz") {
    const MelFilterbank fb = MelFilterbank::build(40, 20.0, 8000.0, 512, 16000);
    REQUIRE(fb.weights.rows() == 40);
    for (int f = 0; f < 40; ++f) {
        double peak = 0.0;
        for (int b = 0; b < fb.weights.cols(); ++b) {
            const double hz = b * 16000.0 / 512.0;
            const double w = fb.weights(f, b);
            CHECK(w >= 0.0);
            if (hz < 20.0 || hz > 8000.0) CHECK(w == 0.0);
            peak = std::max(peak, w);
        }
        CHECK(peak > 0.0);   // every filter covers at least one bin at this resolution
        CHECK(peak <= 1.0);  // triangles peak at 1
    }
}

TEST_CASE("mfcc: silence gives identical frames equal to the DCT of the log floor") {
    const AudioBuffer silence = testutil::silence_audio(0.5, 16000);
    const FeatureSequence fs = mfcc(silence);
    fs.validate();
    REQUIRE(fs.dims() == 26);
    REQUIRE(fs.fps == 100.0);

    // All mel energies floor at 1e-10, so each frame is the orthonormal
    // DCT-II of a constant vector: c*sqrt(40) in coefficient 0, zero above.
    const double c0 = std::log(1e-10) * std::sqrt(40.0);
    for (int t = 0; t < fs.frames(); ++t) {
        CHECK(fs.data(t, 0) == doctest::Approx(c0).epsilon(1e-12));
        for (int k = 1; k < 26; ++k) CHECK(std::fabs(fs.data(t, k)) < 1e-9);
        for (int k = 0; k < 26; ++k) CHECK(fs.data(t, k) == fs.data(0, k));
    }
}

TEST_CASE("mfcc: 1 s at 16 kHz gives 99 frames of 26 values") {
    const AudioBuffer a = testutil::sine_audio(440.0, 1.0, 16000);
    const FeatureSequence fs = mfcc(a);
    CHECK(fs.frames() == 99);
    CHECK(fs.dims() == 26);
}

TEST_CASE("mfcc matches the independent mel+DCT oracle on white noise") {
    Rng rng(33);
    const AudioBuffer noise = testutil::noise_audio(0.3, 16000, rng);
    const FeatureSequence fast = mfcc(noise);
    const Matrix slow = oracle::mfcc(noise);
    REQUIRE(fast.data.same_shape(slow));
    CHECK(oracle::max_rel_err(fast.data, slow) < 1e-6);
}

TEST_CASE("spectrogram64: silence floors every band, frame counts follow the law") {
    const AudioBuffer silence = testutil::silence_audio(1.0, 16000);
    const FeatureSequence fs = spectrogram64(silence);
    REQUIRE(fs.dims() == 64);
    REQUIRE(fs.fps == 200.0);
    CHECK(fs.frames() == frame_count(16000, 80, 80));
    for (std::size_t i = 0; i < fs.data.size(); ++i) CHECK(fs.data.data()[i] == doctest::Approx(std::log(1e-10)));
}

TEST_CASE("spectrogram64: 10 s of audio follows the frame-count law") {
    const AudioBuffer a = testutil::sine_audio(440.0, 10.0, 16000);
    const FeatureSequence fs = spectrogram64(a);
    // floor((160000 - 80)/80) + 1 = 2000 frames at 200 fps.
    CHECK(fs.frames() == 2000);
    CHECK(fs.frames() == frame_count(160000, 80, 80));
}

TEST_CASE("band edge: a resolved 15 Hz tone contributes ~0 to all mel bands") {
    // At a frequency resolution fine enough to separate 15 Hz from the
    // 20 Hz band edge (1 s window -> 1 Hz bins), the tone's power lands
    // in bins whose filter weight is zero.
    const AudioBuffer low = testutil::sine_audio(15.0, 3.0, 16000, 0.9);
    const Matrix power = stft_power(low, 1.0, 0.5);
    const int n_fft = 2 * (power.cols() - 1);
    const MelFilterbank fb = MelFilterbank::build(64, 20.0, 8000.0, n_fft, 16000);

    double tone_power = 0.0, band_power = 0.0;
    for (int t = 0; t < power.rows(); ++t) {
        for (int b = 0; b < power.cols(); ++b) tone_power += power(t, b);
        for (int f = 0; f < 64; ++f) {
            double s = 0.0;
            for (int b = 0; b < power.cols(); ++b) s += fb.weights(f, b) * power(t, b);
            band_power += s;
        }
    }
    CHECK(band_power < 1e-6 * tone_power);
}

TEST_CASE("spectrogram64 matches the brute-force oracle") {
    Rng rng(34);
    const AudioBuffer noise = testutil::noise_audio(0.2, 16000, rng);
    const FeatureSequence fast = spectrogram64(noise);
    const Matrix slow = oracle::spectrogram64(noise);
    REQUIRE(fast.data.same_shape(slow));
    CHECK(oracle::max_rel_err(fast.data, slow) < 1e-6);
}

TEST_CASE("downsample_avg") {
    FeatureSequence fs;
    fs.kind = FeatureKind::Prosodic;
    fs.fps = 100.0;

    SUBCASE("block mean of [2,4,6,8,10] with factor 5 is [6]") {
        fs.data = Matrix(5, 4);
        for (int t = 0; t < 5; ++t)
            for (int k = 0; k < 4; ++k) fs.data(t, k) = 2.0 * (t + 1);
        const FeatureSequence out = downsample_avg(fs, 5);
        REQUIRE(out.frames() == 1);
        CHECK(out.fps == 20.0);
        CHECK(out.kind == FeatureKind::Prosodic);
        for (int k = 0; k < 4; ++k) CHECK(out.data(0, k) == 6.0);
    }
    SUBCASE("constant sequences stay constant with ceil(T/factor) frames") {
        fs.data = Matrix(17, 4);
        fs.data.fill(3.25);
        const FeatureSequence out = downsample_avg(fs, 5);
        REQUIRE(out.frames() == 4);  // ceil(17/5)
        for (std::size_t i = 0; i < out.data.size(); ++i) CHECK(out.data.data()[i] == 3.25);
    }
    SUBCASE("1999 frames at factor 10 give 200 frames, last block of 9") {
        fs.data = Matrix(1999, 4);
        for (int t = 0; t < 1999; ++t)
            for (int k = 0; k < 4; ++k) fs.data(t, k) = t;
        const FeatureSequence out = downsample_avg(fs, 10);
        REQUIRE(out.frames() == 200);
        // Last block covers frames 1990..1998 (9 of them).
        CHECK(out.data(199, 0) == doctest::Approx((1990 + 1998) / 2.0));
    }
    SUBCASE("mean is preserved and factor-1 is the identity") {
        Rng rng(8);
        fs.data = testutil::random_matrix(23, 4, rng);
        const FeatureSequence out = downsample_avg(fs, 4);
        // Mean preservation needs equal-sized blocks; check on a truncated
        // multiple-of-factor prefix.
        FeatureSequence even = fs;
        even.data = Matrix(20, 4);
        for (int t = 0; t < 20; ++t)
            for (int k = 0; k < 4; ++k) even.data(t, k) = fs.data(t, k);
        const FeatureSequence out_even = downsample_avg(even, 4);
        for (int k = 0; k < 4; ++k) {
            double in_mean = 0.0, out_mean = 0.0;
            for (int t = 0; t < 20; ++t) in_mean += even.data(t, k) / 20.0;
            for (int t = 0; t < out_even.frames(); ++t) out_mean += out_even.data(t, k) / out_even.frames();
            CHECK(in_mean == doctest::Approx(out_mean).epsilon(1e-12));
        }
        const FeatureSequence same = downsample_avg(fs, 1);
        for (std::size_t i = 0; i < fs.data.size(); ++i) CHECK(same.data.data()[i] == fs.data.data()[i]);
        CHECK(out.frames() == 6);
    }
    SUBCASE("empty input is an error") {
        fs.data = Matrix(0, 4);
        CHECK_THROWS(downsample_avg(fs, 5));
    }
}

TEST_CASE("combine: widths, kinds and mismatch errors") {
    Rng rng(2);
    FeatureSequence m;
    m.kind = FeatureKind::Mfcc;
    m.fps = 20.0;
    m.data = testutil::random_matrix(11, 26, rng);
    FeatureSequence p;
    p.kind = FeatureKind::Prosodic;
    p.fps = 20.0;
    p.data = testutil::random_matrix(11, 4, rng);

    const FeatureSequence mp = combine(m, p);
    CHECK(mp.kind == FeatureKind::MfccPros);
    CHECK(mp.dims() == 30);
    CHECK(mp.data(3, 2) == m.data(3, 2));
    CHECK(mp.data(3, 27) == p.data(3, 1));

    FeatureSequence s;
    s.kind = FeatureKind::Spectrogram;
    s.fps = 20.0;
    s.data = testutil::random_matrix(11, 64, rng);
    CHECK(combine(s, p).dims() == 68);
    CHECK(combine(s, p).kind == FeatureKind::SpectrPros);

    FeatureSequence short_p = p;
    short_p.data = testutil::random_matrix(10, 4, rng);
    CHECK_THROWS(combine(m, short_p));
    FeatureSequence wrong_fps = p;
    wrong_fps.fps = 100.0;
    CHECK_THROWS(combine(m, wrong_fps));
    CHECK_THROWS(combine(p, m));  // only MFCC+Pros / Spectr+Pros pairs are defined
}

TEST_CASE("all extractors produce finite features on assorted inputs") {
    Rng rng(77);
    const AudioBuffer inputs[] = {
        testutil::silence_audio(0.6, 16000),
        testutil::sine_audio(200.0, 0.6, 16000, 0.99),
        testutil::noise_audio(0.6, 16000, rng, 0.99),
        testutil::sawtooth_audio(150.0, 0.6, 16000, 0.01),
    };
    for (const auto& a : inputs) {
        for (const FeatureKind kind : {FeatureKind::Mfcc, FeatureKind::Spectrogram, FeatureKind::Prosodic,
                                       FeatureKind::MfccPros, FeatureKind::SpectrPros}) {
            const FeatureSequence fs = extract_at_20fps(a, kind);
            CHECK_NOTHROW(fs.validate());  // validate() checks finiteness and width
            CHECK(fs.fps == doctest::Approx(20.0));
        }
    }
}

TEST_CASE("feature CSV round trip preserves header and values") {
    testutil::TempDir dir("featcsv");
    Rng rng(12);
    FeatureSequence fs;
    fs.kind = FeatureKind::Prosodic;
    fs.fps = 20.0;
    fs.data = testutil::random_matrix(7, 4, rng);
    const std::string path = dir.file("f.csv");
    write_feature_csv(path, fs, "note=test");
    const FeatureSequence back = read_feature_csv(path);
    CHECK(back.kind == fs.kind);
    CHECK(back.fps == fs.fps);
    REQUIRE(back.data.same_shape(fs.data));
    for (std::size_t i = 0; i < fs.data.size(); ++i)
        CHECK(back.data.data()[i] == doctest::Approx(fs.data.data()[i]).epsilon(1e-11));
}
