#pragma once

#include <vector>

#include "audio/wav.hpp"

namespace gg::audio {

// Normalized-autocorrelation pitch tracker. Searches 60-400 Hz over 0.04 s
// windows at the given hop; frames whose peak autocorrelation falls below
// the voicing threshold report 0 (unvoiced).
std::vector<double> f0_contour(const AudioBuffer& audio, double hop_s = 0.005);

// Per-frame RMS over 0.005 s windows at the given hop.
std::vector<double> energy_contour(const AudioBuffer& audio, double hop_s = 0.005);

// log(x+1) - 4, negative values clamped to zero. Unvoiced frames (x = 0)
// therefore encode as 0.
double adjust_pitch(double f0_hz);

// log(x) - 3 with x floored at 1e-10.
double adjust_intensity(double intensity);

constexpr double kPitchMinHz = 60.0;
constexpr double kPitchMaxHz = 400.0;
constexpr double kVoicingThreshold = 0.45;
constexpr double kPitchWindowS = 0.04;

}  // namespace gg::audio
