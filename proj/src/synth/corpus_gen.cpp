#include "synth/corpus_gen.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "audio/features.hpp"
#include "audio/pitch.hpp"
#include "core/rng.hpp"
#include "core/textio.hpp"
#include "motion/scaler.hpp"
#include "train/corpus.hpp"

namespace gg::synth {

namespace {

struct JointDef {
    const char* name;
    int parent;
    double ox, oy, oz;
};

// 64 joints: torso + head (0-10), left arm with fingers (11-29), right arm
// (30-48), legs (49-60), head details (61-63).
const JointDef kJoints[] = {
    {"hips", -1, 0.0, 0.0, 0.0},
    {"spine_1", 0, 0.0, 0.8, 0.0},
    {"spine_2", 1, 0.0, 0.8, 0.0},
    {"spine_3", 2, 0.0, 0.8, 0.0},
    {"chest", 3, 0.0, 0.8, 0.0},
    {"neck", 4, 0.0, 0.6, 0.0},
    {"head", 5, 0.0, 0.6, 0.0},
    {"head_top", 6, 0.0, 0.6, 0.0},
    {"jaw", 6, 0.0, 0.1, 0.3},
    {"l_eye", 6, 0.2, 0.3, 0.3},
    {"r_eye", 6, -0.2, 0.3, 0.3},
    {"l_clavicle", 4, 0.5, 0.4, 0.0},
    {"l_shoulder", 11, 0.7, 0.0, 0.0},
    {"l_elbow", 12, 1.1, 0.0, 0.0},
    {"l_wrist", 13, 1.0, 0.0, 0.0},
    {"l_hand", 14, 0.35, 0.0, 0.0},
    {"l_thumb_1", 15, 0.12, -0.1, 0.15},
    {"l_thumb_2", 16, 0.12, 0.0, 0.06},
    {"l_index_1", 15, 0.35, 0.0, 0.12},
    {"l_index_2", 18, 0.18, 0.0, 0.0},
    {"l_index_3", 19, 0.12, 0.0, 0.0},
    {"l_middle_1", 15, 0.36, 0.0, 0.0},
    {"l_middle_2", 21, 0.2, 0.0, 0.0},
    {"l_middle_3", 22, 0.13, 0.0, 0.0},
    {"l_ring_1", 15, 0.35, 0.0, -0.1},
    {"l_ring_2", 24, 0.18, 0.0, 0.0},
    {"l_ring_3", 25, 0.12, 0.0, 0.0},
    {"l_pinky_1", 15, 0.3, 0.0, -0.2},
    {"l_pinky_2", 27, 0.14, 0.0, 0.0},
    {"l_pinky_3", 28, 0.1, 0.0, 0.0},
    {"r_clavicle", 4, -0.5, 0.4, 0.0},
    {"r_shoulder", 30, -0.7, 0.0, 0.0},
    {"r_elbow", 31, -1.1, 0.0, 0.0},
    {"r_wrist", 32, -1.0, 0.0, 0.0},
    {"r_hand", 33, -0.35, 0.0, 0.0},
    {"r_thumb_1", 34, -0.12, -0.1, 0.15},
    {"r_thumb_2", 35, -0.12, 0.0, 0.06},
    {"r_index_1", 34, -0.35, 0.0, 0.12},
    {"r_index_2", 37, -0.18, 0.0, 0.0},
    {"r_index_3", 38, -0.12, 0.0, 0.0},
    {"r_middle_1", 34, -0.36, 0.0, 0.0},
    {"r_middle_2", 40, -0.2, 0.0, 0.0},
    {"r_middle_3", 41, -0.13, 0.0, 0.0},
    {"r_ring_1", 34, -0.35, 0.0, -0.1},
    {"r_ring_2", 43, -0.18, 0.0, 0.0},
    {"r_ring_3", 44, -0.12, 0.0, 0.0},
    {"r_pinky_1", 34, -0.3, 0.0, -0.2},
    {"r_pinky_2", 46, -0.14, 0.0, 0.0},
    {"r_pinky_3", 47, -0.1, 0.0, 0.0},
    {"l_hip", 0, 0.45, -0.2, 0.0},
    {"l_knee", 49, 0.0, -1.8, 0.0},
    {"l_ankle", 50, 0.0, -1.7, 0.0},
    {"l_heel", 51, 0.0, -0.2, -0.25},
    {"l_foot", 51, 0.0, -0.15, 0.5},
    {"l_toe", 53, 0.0, 0.0, 0.3},
    {"r_hip", 0, -0.45, -0.2, 0.0},
    {"r_knee", 55, 0.0, -1.8, 0.0},
    {"r_ankle", 56, 0.0, -1.7, 0.0},
    {"r_heel", 57, 0.0, -0.2, -0.25},
    {"r_foot", 57, 0.0, -0.15, 0.5},
    {"r_toe", 59, 0.0, 0.0, 0.3},
    {"nose", 6, 0.0, 0.2, 0.4},
    {"l_ear", 6, 0.3, 0.2, 0.0},
    {"r_ear", 6, -0.3, 0.2, 0.0},
};

constexpr int kDriven[] = {11, 12, 13, 14, 15, 18, 30, 31, 32, 33, 34, 37};

std::vector<double> moving_average5(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> out(n, 0.0);
    for (int t = 0; t < n; ++t) {
        double s = 0.0;
        int c = 0;
        for (int o = -2; o <= 2; ++o) {
            const int i = t + o;
            if (i < 0 || i >= n) continue;
            s += x[i];
            ++c;
        }
        out[t] = s / c;
    }
    return out;
}

}  // namespace

motion::Skeleton synthetic_skeleton() {
    motion::Skeleton skel;
    for (const auto& def : kJoints) {
        motion::Joint j;
        j.name = def.name;
        j.parent = def.parent;
        j.offset = {def.ox, def.oy, def.oz};
        skel.joints.push_back(std::move(j));
    }
    // Root carries translation + rotation; every other joint rotates.
    using motion::Channel;
    skel.joints[0].channels = {Channel::Xposition, Channel::Yposition, Channel::Zposition,
                               Channel::Zrotation, Channel::Xrotation, Channel::Yrotation};
    for (std::size_t j = 1; j < skel.joints.size(); ++j)
        skel.joints[j].channels = {Channel::Zrotation, Channel::Xrotation, Channel::Yrotation};
    if (skel.joint_count() != motion::kMotionJoints)
        throw std::logic_error("synthetic skeleton must have 64 joints");
    return skel;
}

std::vector<int> driven_joints() { return std::vector<int>(std::begin(kDriven), std::end(kDriven)); }

DriveCoeffs drive_coeffs(const SynthSpec& spec) {
    Rng rng = Rng(spec.seed).split(1);
    DriveCoeffs dc;
    const int channels = static_cast<int>(driven_joints().size()) * 3;
    for (int k = 0; k < channels; ++k) {
        const double sa = rng.uniform() < 0.5 ? -1.0 : 1.0;
        const double sb = rng.uniform() < 0.5 ? -1.0 : 1.0;
        dc.a.push_back(sa * rng.uniform(3.0, 6.0));
        dc.b.push_back(sb * rng.uniform(1.5, 3.5));
        dc.rest.push_back(rng.uniform(-12.0, 12.0));
    }
    return dc;
}

audio::AudioBuffer gen_audio(const SynthSpec& spec, int id) {
    Rng rng = Rng(spec.seed).split(1000 + static_cast<std::uint64_t>(id));
    audio::AudioBuffer buf;
    buf.sample_rate = spec.sample_rate;
    const double duration = rng.uniform(spec.duration_min_s, spec.duration_max_s);
    const int n = static_cast<int>(std::lround(duration * spec.sample_rate));
    buf.samples.assign(n, 0.0);

    // Noise floor everywhere (gaps stay below RMS 0.01).
    for (int i = 0; i < n; ++i) buf.samples[i] = rng.uniform(-0.004, 0.004);

    const double ramp_s = 0.15;
    double t = rng.uniform(0.1, 0.3);  // leading gap
    while (t < duration) {
        const double seg_len = rng.uniform(0.8, 1.5);
        const double f0_base = rng.uniform(100.0, 300.0);
        const double drift = rng.uniform(-0.05, 0.05);  // relative pitch drift over the segment
        const double base_amp = rng.uniform(0.15, 0.45) * spec.voiced_gain;

        // Amplitude envelope knots every 0.2 s, cosine-interpolated.
        const int knots = std::max(2, static_cast<int>(seg_len / 0.2) + 1);
        std::vector<double> knot_vals(knots);
        for (int k = 0; k < knots; ++k) knot_vals[k] = rng.uniform(0.5, 1.0);

        const int start = static_cast<int>(std::lround(t * spec.sample_rate));
        const int len = static_cast<int>(std::lround(seg_len * spec.sample_rate));
        double phase = rng.uniform(0.0, 1.0);
        for (int i = 0; i < len && start + i < n; ++i) {
            const double u = static_cast<double>(i) / len;  // 0..1 within the segment
            const double f0 = f0_base * (1.0 + drift * u);
            phase += f0 / spec.sample_rate;
            const double saw = 2.0 * (phase - std::floor(phase + 0.5));

            const double kpos = u * (knots - 1);
            const int k0 = std::min(static_cast<int>(kpos), knots - 2);
            const double frac = kpos - k0;
            const double mix = 0.5 - 0.5 * std::cos(M_PI * frac);
            double env = knot_vals[k0] * (1.0 - mix) + knot_vals[k0 + 1] * mix;

            const double time_in = i / static_cast<double>(spec.sample_rate);
            const double time_out = (len - 1 - i) / static_cast<double>(spec.sample_rate);
            if (time_in < ramp_s) env *= 0.5 - 0.5 * std::cos(M_PI * time_in / ramp_s);
            if (time_out < ramp_s) env *= 0.5 - 0.5 * std::cos(M_PI * time_out / ramp_s);

            buf.samples[start + i] += base_amp * env * saw;
        }
        t += seg_len + rng.uniform(0.3, 0.6);  // gap before the next burst
    }
    return buf;
}

OracleTracks oracle_tracks(const audio::AudioBuffer& audio) {
    using namespace gg::audio;
    const FeatureSequence pros = downsample_avg(prosodic_features(audio), 10);
    OracleTracks tracks;
    for (int t = 0; t < pros.frames(); ++t) {
        tracks.energy.push_back(pros.data(t, 0));
        tracks.pitch.push_back(pros.data(t, 2));
    }
    tracks.smooth_energy = moving_average5(tracks.energy);
    tracks.smooth_pitch = moving_average5(tracks.pitch);
    return tracks;
}

motion::MotionSequence gen_motion(const SynthSpec& spec, const audio::AudioBuffer& audio) {
    const motion::Skeleton skel = synthetic_skeleton();
    const DriveCoeffs dc = drive_coeffs(spec);
    const OracleTracks tracks = oracle_tracks(audio);
    const std::vector<int> driven = driven_joints();

    const int frames = static_cast<int>(tracks.energy.size());
    const int width = skel.channel_count();

    // Channel column of each joint's first channel.
    std::vector<int> first_channel(skel.joint_count(), 0);
    for (int j = 1; j < skel.joint_count(); ++j)
        first_channel[j] = first_channel[j - 1] + static_cast<int>(skel.joints[j - 1].channels.size());

    // Energy reference level: angles rest near `rest` in silence.
    const double e0 = audio::adjust_intensity(0.002);

    motion::JointRotationSequence rot;
    rot.frame_time = 1.0 / motion::kMotionFps;
    rot.frames = Matrix(frames, width);
    for (int t = 0; t < frames; ++t) {
        const double e = tracks.smooth_energy[t] - e0;
        const double p = tracks.smooth_pitch[t];
        for (std::size_t d = 0; d < driven.size(); ++d) {
            for (int c = 0; c < 3; ++c) {
                const std::size_t k = d * 3 + c;
                rot.frames(t, first_channel[driven[d]] + c) = dc.a[k] * e + dc.b[k] * p + dc.rest[k];
            }
        }
    }
    return forward_kinematics(skel, rot);
}

void gen_corpus(const SynthSpec& spec, const std::string& out_dir) {
    if (spec.n_train + spec.n_val + spec.n_test > spec.n_utterances)
        throw std::runtime_error("gen_corpus: split counts exceed utterance count");
    if (spec.duration_min_s < 2.0) throw std::runtime_error("gen_corpus: durations must be at least 2 s");

    textio::ensure_dir(out_dir + "/audio");
    textio::ensure_dir(out_dir + "/motion");
    write_skeleton_txt(out_dir + "/skeleton.txt", synthetic_skeleton());

    train::Corpus corpus;
    char name[32];
    for (int id = 0; id < spec.n_utterances; ++id) {
        std::snprintf(name, sizeof(name), "utt_%03d", id);
        const audio::AudioBuffer buf = gen_audio(spec, id);
        audio::write_wav_pcm16(out_dir + "/audio/" + name + ".wav", buf);
        const motion::MotionSequence m = gen_motion(spec, buf);
        motion::write_motion_csv(out_dir + "/motion/" + name + ".csv", m,
                                 "generator: seed=" + std::to_string(spec.seed) + " id=" + std::to_string(id));
        train::Utterance utt;
        utt.id = name;
        corpus.utterances.push_back(std::move(utt));
    }
    train::split_corpus(corpus, spec.n_train, spec.n_val, spec.n_test, spec.seed);
    train::write_split_file(out_dir + "/split.txt", corpus);
}

}  // namespace gg::synth
