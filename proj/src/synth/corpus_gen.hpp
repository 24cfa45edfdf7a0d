#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "audio/wav.hpp"
#include "motion/bvh.hpp"
#include "motion/kinematics.hpp"

namespace gg::synth {

// Deterministic speech-and-motion corpus with a known audio-to-motion
// mapping: arm-joint angles follow smoothed energy and pitch tracks of the
// generated audio, so speech features are predictive of motion by
// construction.
struct SynthSpec {
    int n_utterances = 50;
    double duration_min_s = 2.5;
    double duration_max_s = 4.0;
    int sample_rate = 16000;
    std::uint64_t seed = 42;
    int n_train = 40, n_val = 5, n_test = 5;
    // Multiplies voiced-segment amplitude only; gaps keep their noise floor,
    // so louder speech has a wider energy swing.
    double voiced_gain = 1.0;
};

// The fixed 64-joint skeleton: torso/head/legs static, two arms whose
// clavicle..index chains are driven.
motion::Skeleton synthetic_skeleton();

// Indices of the 12 driven joints (6 per arm).
std::vector<int> driven_joints();

// Alternating voiced sawtooth bursts (pitch in [100, 300] Hz, spline-shaped
// amplitude envelope) and low-noise gaps. Deterministic in (spec.seed, id).
audio::AudioBuffer gen_audio(const SynthSpec& spec, int id);

// The oracle mapping: joint angles are affine in the 5-frame moving average
// of the 20 fps adjusted energy and pitch tracks, then run through FK.
motion::MotionSequence gen_motion(const SynthSpec& spec, const audio::AudioBuffer& audio);

// Per-channel drive coefficients (angle = a*smooth(E) + b*smooth(P) + rest),
// drawn once per corpus seed. Exposed for the learnability checks.
struct DriveCoeffs {
    std::vector<double> a, b, rest;  // one entry per driven rotation channel
};
DriveCoeffs drive_coeffs(const SynthSpec& spec);

// The 20 fps adjusted-energy/pitch tracks and their smoothed versions used
// by gen_motion.
struct OracleTracks {
    std::vector<double> energy, pitch;          // adjusted, 20 fps
    std::vector<double> smooth_energy, smooth_pitch;
};
OracleTracks oracle_tracks(const audio::AudioBuffer& audio);

// Writes audio/<id>.wav, motion/<id>.csv, skeleton.txt and split.txt.
void gen_corpus(const SynthSpec& spec, const std::string& out_dir);

}  // namespace gg::synth
