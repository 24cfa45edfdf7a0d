#include <doctest.h>

#include <cmath>

#include "audio/features.hpp"
#include "audio/pitch.hpp"
#include "helpers.hpp"

using namespace gg;
using namespace gg::audio;

TEST_CASE("f0_contour: 220 Hz sawtooth within 2 Hz on interior frames") {
    const AudioBuffer saw = testutil::sawtooth_audio(220.0, 1.0, 16000, 0.6);
    const std::vector<double> f0 = f0_contour(saw);
    REQUIRE(f0.size() > 20);
    int voiced = 0;
    for (std::size_t t = 2; t + 2 < f0.size(); ++t) {
        if (f0[t] == 0.0) continue;
        ++voiced;
        CHECK(std::fabs(f0[t] - 220.0) <= 2.0);
    }
    CHECK(voiced > static_cast<int>(f0.size()) * 8 / 10);
}

TEST_CASE("f0_contour: white noise is mostly unvoiced") {
    Rng rng(55);
    const AudioBuffer noise = testutil::noise_audio(1.0, 16000, rng, 0.8);
    const std::vector<double> f0 = f0_contour(noise);
    int unvoiced = 0;
    for (double v : f0)
        if (v == 0.0) ++unvoiced;
    CHECK(unvoiced >= static_cast<int>(f0.size()) * 9 / 10);
}

TEST_CASE("f0_contour: silence is all zero, and values stay in {0} u [60,400]") {
    const AudioBuffer silence = testutil::silence_audio(0.5, 16000);
    for (double v : f0_contour(silence)) CHECK(v == 0.0);

    const AudioBuffer saw = testutil::sawtooth_audio(100.0, 0.5, 16000, 0.5);
    for (double v : f0_contour(saw)) CHECK((v == 0.0 || (v >= 60.0 && v <= 400.0)));
}

TEST_CASE("f0_contour rejects audio shorter than its window") {
    const AudioBuffer tiny = testutil::silence_audio(0.03, 16000);
    CHECK_THROWS_AS(f0_contour(tiny), std::invalid_argument);
}

TEST_CASE("prosodic adjustment formulas") {
    // Pitch: log(x+1) - 4 with the negative side clamped to zero.
    CHECK(adjust_pitch(0.0) == 0.0);                                     // unvoiced encodes as 0
    CHECK(adjust_pitch(50.0) == 0.0);                                    // log(51)-4 < 0 -> clamp
    CHECK(adjust_pitch(std::exp(4.0) - 1.0) == doctest::Approx(0.0).epsilon(1e-12));  // clamp boundary
    CHECK(adjust_pitch(200.0) == doctest::Approx(std::log(201.0) - 4.0).epsilon(1e-15));

    // Intensity: log(x) - 3, x floored at 1e-10.
    CHECK(adjust_intensity(std::exp(3.0)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(adjust_intensity(1.0) == doctest::Approx(-3.0).epsilon(1e-15));
    CHECK(adjust_intensity(0.0) == doctest::Approx(std::log(1e-10) - 3.0).epsilon(1e-15));
}

TEST_CASE("prosodic_features: layout, deltas and the trailing-delta rule") {
    const AudioBuffer saw = testutil::sawtooth_audio(180.0, 0.8, 16000, 0.5);
    const FeatureSequence fs = prosodic_features(saw);
    fs.validate();
    REQUIRE(fs.dims() == 4);
    REQUIRE(fs.fps == 200.0);
    const int t_len = fs.frames();
    REQUIRE(t_len > 3);

    // Columns: [energy, d-energy, pitch, d-pitch]; deltas are forward
    // differences with the last frame repeating the previous delta.
    for (int t = 0; t + 1 < t_len; ++t) {
        CHECK(fs.data(t, 1) == doctest::Approx(fs.data(t + 1, 0) - fs.data(t, 0)).epsilon(1e-12));
        CHECK(fs.data(t, 3) == doctest::Approx(fs.data(t + 1, 2) - fs.data(t, 2)).epsilon(1e-12));
    }
    CHECK(fs.data(t_len - 1, 1) == fs.data(t_len - 2, 1));
    CHECK(fs.data(t_len - 1, 3) == fs.data(t_len - 2, 3));

    // Adjusted log-pitch is never negative.
    for (int t = 0; t < t_len; ++t) CHECK(fs.data(t, 2) >= 0.0);
}

TEST_CASE("prosodic clamp holds on arbitrary audio") {
    Rng rng(66);
    const AudioBuffer noise = testutil::noise_audio(0.7, 16000, rng);
    const FeatureSequence fs = prosodic_features(noise);
    for (int t = 0; t < fs.frames(); ++t) CHECK(fs.data(t, 2) >= 0.0);
}
