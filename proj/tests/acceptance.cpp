// Acceptance suite: one pass/fail line per criterion.
//
//  1  gradient integrity (dense, batchnorm, GRU BPTT, full speech stack)
//  2  feature extractors vs the brute-force DFT/mel/DCT oracle
//  3  prosodic adjustment formulas, exact to 1e-12
//  4  autoencoder capacity trend on rank-40 data
//  5  end-to-end learning beats the static mean pose (MFCC and prosodic)
//  6  smoothness: chained model's jerk closer to ground truth than baseline
//  7  metric unit suite
//  8  BVH/FK hand-computed fixtures and bone-length preservation
//  9  bit-identical retraining through the CLI
// 10  five-run sweep protocol and report schema
//
// Usage: acceptance [--only 1,2,...] [--keep]

#include <unistd.h>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "audio/features.hpp"
#include "audio/pitch.hpp"
#include "audio_oracle.hpp"
#include "core/textio.hpp"
#include "eval/metrics.hpp"
#include "helpers.hpp"
#include "model/nets.hpp"
#include "model/synthesis.hpp"
#include "model/windows.hpp"
#include "motion/bvh.hpp"
#include "motion/kinematics.hpp"
#include "nn/gradcheck.hpp"
#include "nn/gru.hpp"
#include "nn/layers.hpp"
#include "nn/loss.hpp"
#include "synth/corpus_gen.hpp"
#include "train/corpus.hpp"
#include "train/sweep.hpp"
#include "train/trainer.hpp"

#ifndef GG_CLI_PATH
#define GG_CLI_PATH "gesturegen"
#endif

using namespace gg;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Check {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

double now_s() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---------------------------------------------------------------- criterion 1

Outcome criterion_gradients() {
    Check c;
    Rng rng(101);

    {  // dense
        nn::DenseParams p = nn::DenseParams::init(4, 5, rng);
        const Matrix x = testutil::random_matrix(3, 5, rng);
        const Matrix target = testutil::random_matrix(3, 4, rng);
        Matrix dloss;
        nn::mse_loss(nn::dense_forward(p, x), target, &dloss);
        nn::DenseGrads g;
        nn::dense_backward(p, x, dloss, g, nullptr);
        auto loss = [&] { return nn::mse_loss(nn::dense_forward(p, x), target, nullptr); };
        const double err = nn::grad_check(loss, {param_ref("W", p.W), param_ref("b", p.b)},
                                          {param_ref("W", g.dW), param_ref("b", g.db)}, 200);
        c.expect(err < 1e-4, "dense grad err " + fmt(err));
    }
    {  // batchnorm (train-mode statistics)
        nn::BatchNormState st = nn::BatchNormState::init(5);
        for (int k = 0; k < 5; ++k) {
            st.gamma[k] = rng.uniform(0.5, 1.5);
            st.beta[k] = rng.uniform(-0.5, 0.5);
        }
        Matrix x = testutil::random_matrix(8, 5, rng);
        const Matrix target = testutil::random_matrix(8, 5, rng);
        const auto saved = st;
        auto loss = [&] {
            st.running_mean = saved.running_mean;
            st.running_var = saved.running_var;
            return nn::mse_loss(nn::batchnorm_forward(st, x, nn::Mode::Train, nullptr), target, nullptr);
        };
        nn::BatchNormCache cache;
        Matrix dloss;
        nn::mse_loss(nn::batchnorm_forward(st, x, nn::Mode::Train, &cache), target, &dloss);
        std::vector<double> dg, db;
        Matrix dx = nn::batchnorm_backward(st, cache, dloss, dg, db);
        const double err =
            nn::grad_check(loss, {param_ref("x", x), param_ref("g", st.gamma), param_ref("b", st.beta)},
                           {param_ref("x", dx), param_ref("g", dg), param_ref("b", db)}, 200);
        c.expect(err < 1e-4, "batchnorm grad err " + fmt(err));
    }
    {  // GRU, 4-step BPTT
        nn::GRUParams p = nn::GRUParams::init(6, 5, rng);
        const Matrix x = testutil::random_matrix(4 * 2, 5, rng);
        const Matrix target = testutil::random_matrix(4 * 2, 6, rng);
        nn::GRUCache cache;
        Matrix dloss;
        nn::mse_loss(nn::gru_forward(p, x, 4, 2, Matrix(), &cache), target, &dloss);
        nn::GRUGrads g;
        nn::gru_backward(p, cache, dloss, g, nullptr);
        auto loss = [&] { return nn::mse_loss(nn::gru_forward(p, x, 4, 2, Matrix(), nullptr), target, nullptr); };
        const double err = nn::grad_check(
            loss,
            {param_ref("Wz", p.Wz), param_ref("Wr", p.Wr), param_ref("Wh", p.Wh), param_ref("Uz", p.Uz),
             param_ref("Ur", p.Ur), param_ref("Uh", p.Uh), param_ref("bz", p.bz), param_ref("br", p.br),
             param_ref("bh", p.bh)},
            {param_ref("Wz", g.dWz), param_ref("Wr", g.dWr), param_ref("Wh", g.dWh), param_ref("Uz", g.dUz),
             param_ref("Ur", g.dUr), param_ref("Uh", g.dUh), param_ref("bz", g.dbz), param_ref("br", g.dbr),
             param_ref("bh", g.dbh)},
            250);
        c.expect(err < 1e-5, "gru grad err " + fmt(err));
    }
    {  // full SpeechE stack at production width, BN on running statistics
        model::SpeechNet net = model::SpeechNet::init(61 * 26, 2 * 64, audio::FeatureKind::Mfcc, rng);
        for (auto* bn : {&net.bn1, &net.bn2, &net.bn3, &net.bng})
            for (int k = 0; k < bn->dims(); ++k) {
                bn->running_mean[k] = rng.uniform(-0.2, 0.2);
                bn->running_var[k] = rng.uniform(0.5, 1.5);
            }
        const Matrix x = testutil::random_matrix(4 * 2, 61 * 26, rng);
        const Matrix target = testutil::random_matrix(4 * 2, 2 * 64, rng);
        model::SpeechNetCache cache;
        Matrix dloss;
        nn::mse_loss(model::speechnet_forward(net, x, 4, 2, nn::Mode::Infer, nullptr, &cache), target, &dloss);
        model::SpeechNetGrads g;
        model::speechnet_backward(net, cache, dloss, g);
        auto loss = [&] {
            return nn::mse_loss(model::speechnet_forward(net, x, 4, 2, nn::Mode::Infer, nullptr, nullptr), target,
                                nullptr);
        };
        const double err = nn::grad_check(loss, net.param_refs(), g.refs(), 220);
        c.expect(err < 1e-4, "speech stack grad err " + fmt(err));
    }
    return {c.ok, c.ok ? "max relative errors within 1e-4" : c.first_failure};
}

// ---------------------------------------------------------------- criterion 2

Outcome criterion_feature_oracle() {
    Check c;
    Rng rng(202);
    double worst_mfcc = 0.0, worst_spec = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const audio::AudioBuffer noise = testutil::noise_audio(1.0, 16000, rng, rng.uniform(0.05, 0.9));
        worst_mfcc = std::max(worst_mfcc, oracle::max_rel_err(audio::mfcc(noise).data, oracle::mfcc(noise)));
        worst_spec = std::max(worst_spec,
                              oracle::max_rel_err(audio::spectrogram64(noise).data, oracle::spectrogram64(noise)));
    }
    c.expect(worst_mfcc < 1e-6, "mfcc rel err " + fmt(worst_mfcc));
    c.expect(worst_spec < 1e-6, "spectrogram rel err " + fmt(worst_spec));
    return {c.ok, "mfcc " + fmt(worst_mfcc) + ", spectrogram " + fmt(worst_spec) + " over 20 inputs"};
}

// ---------------------------------------------------------------- criterion 3

Outcome criterion_prosodic_formulas() {
    Check c;
    // Pitch: log(x+1)-4 with negatives clamped, intensity: log(x)-3.
    for (double x = 0.0; x <= 500.0; x += 0.5) {
        const double raw = std::log(x + 1.0) - 4.0;
        const double expected = raw < 0.0 ? 0.0 : raw;
        c.expect(std::fabs(audio::adjust_pitch(x) - expected) <= 1e-12, "pitch formula at x=" + fmt(x));
    }
    const double boundary = std::exp(4.0) - 1.0;
    c.expect(std::fabs(audio::adjust_pitch(boundary)) <= 1e-12, "clamp boundary e^4-1");
    c.expect(audio::adjust_pitch(std::nextafter(boundary, 0.0)) == 0.0, "below boundary clamps");
    for (double x : {1e-10, 1e-6, 0.01, 1.0, std::exp(3.0), 20.0, 1000.0}) {
        c.expect(std::fabs(audio::adjust_intensity(x) - (std::log(x) - 3.0)) <= 1e-12,
                 "intensity formula at x=" + fmt(x));
    }
    c.expect(std::fabs(audio::adjust_intensity(std::exp(3.0))) <= 1e-12, "intensity zero at e^3");
    c.expect(std::fabs(audio::adjust_intensity(0.0) - (std::log(1e-10) - 3.0)) <= 1e-12, "intensity floor");
    return {c.ok, c.ok ? "formulas exact to 1e-12 incl. clamp boundary" : c.first_failure};
}

// ---------------------------------------------------------------- criterion 4

Outcome criterion_dae_capacity() {
    Rng rng(404);
    train::Corpus corpus;
    Matrix basis = testutil::random_matrix(40, motion::kMotionFeatureDims, rng);
    for (int u = 0; u < 12; ++u) {
        train::Utterance utt;
        utt.id = "rank40_" + std::to_string(u);
        utt.motion.fps = 20.0;
        utt.motion.joints = 64;
        const int frames = 1000;
        const Matrix coeff = testutil::random_matrix(frames, 40, rng);
        utt.motion.positions = Matrix(frames, 192);
        for (int t = 0; t < frames; ++t)
            for (int k = 0; k < 192; ++k) {
                double s = 0.0;
                for (int cdim = 0; cdim < 40; ++cdim) s += coeff(t, cdim) * basis(cdim, k);
                utt.motion.positions(t, k) = s + 0.01 * rng.gaussian();
            }
        corpus.utterances.push_back(std::move(utt));
    }
    train::split_corpus(corpus, 10, 2, 0, 1);

    auto rel_mse = [&](int d_z) {
        train::TrainConfig cfg;
        cfg.epochs = 20;
        cfg.d_z = d_z;
        const train::DaeTrainResult res = train::train_dae(corpus, cfg);
        int total = 0;
        for (int i : corpus.val_set) total += corpus.at(i).motion.frames();
        Matrix rows(total, motion::kMotionFeatureDims);
        int at = 0;
        for (int i : corpus.val_set) {
            const Matrix raw = motion::raw_motion_features(corpus.at(i).motion);
            for (int t = 0; t < raw.rows(); ++t, ++at)
                for (int k = 0; k < raw.cols(); ++k) rows(at, k) = raw(t, k);
        }
        const Matrix std_rows = res.scaler.apply(rows);
        const model::DaeForward f = model::dae_forward(res.model, std_rows);
        double num = 0.0, den = 0.0;
        for (std::size_t i = 0; i < std_rows.size(); ++i) {
            const double d = f.recon.data()[i] - std_rows.data()[i];
            num += d * d;
            den += std_rows.data()[i] * std_rows.data()[i];
        }
        return num / den;
    };

    const double mse8 = rel_mse(8);
    const double mse64 = rel_mse(64);
    Check c;
    c.expect(mse64 < 0.05, "rel MSE(d_z=64) = " + fmt(mse64));
    c.expect(mse8 > 2.0 * mse64, "margin " + fmt(mse8 / std::max(mse64, 1e-300)) + "x");
    return {c.ok, "rel MSE d_z=8: " + fmt(mse8) + ", d_z=64: " + fmt(mse64) + " (margin " +
                      fmt(mse8 / std::max(mse64, 1e-300)) + "x)"};
}

// ----------------------------------------------------- criteria 5 and 6 (shared runs)

struct E2EResults {
    bool ran = false;
    int mfcc_wins = 0, pros_wins = 0, runs = 0;
    double static_ape = 0.0;
    std::vector<double> mfcc_apes, pros_apes;
    std::vector<double> jerk_prop_dev, jerk_base_dev;
};

E2EResults run_e2e(const std::string& scratch) {
    E2EResults res;
    res.ran = true;

    synth::SynthSpec spec;  // 50 utterances, 40/5/5
    const std::string corpus_dir = scratch + "/corpus_e2e";
    synth::gen_corpus(spec, corpus_dir);
    const train::Corpus corpus_mfcc = train::load_corpus(corpus_dir, audio::FeatureKind::Mfcc);
    const train::Corpus corpus_pros = train::load_corpus(corpus_dir, audio::FeatureKind::Prosodic);

    res.static_ape = train::static_mean_pose_ape(corpus_mfcc, corpus_mfcc.test_set);

    // Ground-truth jerk over the test split.
    std::vector<double> truth_jerks;
    for (int u : corpus_mfcc.test_set) truth_jerks.push_back(eval::avg_stat(corpus_mfcc.at(u).motion, 3));
    const double truth_jerk = eval::mean(truth_jerks);

    const int runs = 5;
    res.runs = runs;
    for (int run = 0; run < runs; ++run) {
        train::TrainConfig cfg;
        cfg.seed = 42 + static_cast<std::uint64_t>(run);
        cfg.d_z = 64;
        cfg.epochs = 20;

        cfg.kind = audio::FeatureKind::Mfcc;
        train::DaeTrainResult dae = train::train_dae(corpus_mfcc, cfg);
        train::NetTrainResult se_mfcc = train::train_net(train::NetKind::SpeechE, corpus_mfcc, cfg, &dae.model,
                                                         &dae.scaler);
        model::ChainedModel chain_mfcc{std::move(se_mfcc.net), dae.model.dec, dae.scaler};
        const train::SplitEval eval_mfcc =
            train::evaluate_chain_on_split(corpus_mfcc, corpus_mfcc.test_set, chain_mfcc);
        res.mfcc_apes.push_back(eval_mfcc.ape);
        if (eval_mfcc.ape < 0.9 * res.static_ape) ++res.mfcc_wins;

        cfg.kind = audio::FeatureKind::Prosodic;
        train::NetTrainResult se_pros = train::train_net(train::NetKind::SpeechE, corpus_pros, cfg, &dae.model,
                                                         &dae.scaler);
        model::ChainedModel chain_pros{std::move(se_pros.net), dae.model.dec, dae.scaler};
        const train::SplitEval eval_pros =
            train::evaluate_chain_on_split(corpus_pros, corpus_pros.test_set, chain_pros);
        res.pros_apes.push_back(eval_pros.ape);
        if (eval_pros.ape < 0.9 * res.static_ape) ++res.pros_wins;

        cfg.kind = audio::FeatureKind::Mfcc;
        train::NetTrainResult baseline = train::train_net(train::NetKind::Baseline, corpus_mfcc, cfg);
        const train::SplitEval eval_base =
            train::evaluate_baseline_on_split(corpus_mfcc, corpus_mfcc.test_set, baseline.net, baseline.scaler);

        res.jerk_prop_dev.push_back(std::fabs(eval_mfcc.jerk - truth_jerk));
        res.jerk_base_dev.push_back(std::fabs(eval_base.jerk - truth_jerk));

        std::printf("    run %d: mfcc ape %.4f, pros ape %.4f, static %.4f | jerk prop %.4f base %.4f truth %.4f\n",
                    run, eval_mfcc.ape, eval_pros.ape, res.static_ape, eval_mfcc.jerk, eval_base.jerk, truth_jerk);
        std::fflush(stdout);
    }
    return res;
}

Outcome criterion_e2e_learning(const E2EResults& r) {
    Check c;
    c.expect(r.mfcc_wins >= 4, "mfcc wins " + std::to_string(r.mfcc_wins) + "/5");
    c.expect(r.pros_wins >= 4, "prosodic wins " + std::to_string(r.pros_wins) + "/5");
    return {c.ok, "static APE " + fmt(r.static_ape) + "; wins vs 0.9x static: mfcc " +
                      std::to_string(r.mfcc_wins) + "/5 (mean ape " + fmt(eval::mean(r.mfcc_apes)) + "), prosodic " +
                      std::to_string(r.pros_wins) + "/5 (mean ape " + fmt(eval::mean(r.pros_apes)) + ")"};
}

Outcome criterion_smoothness(const E2EResults& r) {
    const double prop = eval::median(r.jerk_prop_dev);
    const double base = eval::median(r.jerk_base_dev);
    Check c;
    c.expect(prop <= base, "median |jerk dev| proposed " + fmt(prop) + " vs baseline " + fmt(base));
    return {c.ok, "median |jerk - truth|: proposed " + fmt(prop) + ", baseline " + fmt(base)};
}

// ---------------------------------------------------------------- criterion 7

Outcome criterion_metric_units() {
    Check c;
    Rng rng(707);
    motion::MotionSequence a;
    a.fps = 20.0;
    a.joints = 3;
    a.positions = testutil::random_matrix(10, 9, rng);
    c.expect(eval::ape(a, a) == 0.0, "ape(x,x) != 0");

    motion::MotionSequence b = a;
    for (int t = 0; t < 10; ++t)
        for (int j = 0; j < 3; ++j) b.joint(t, j)[0] += 1.0;
    c.expect(std::fabs(eval::ape(a, b) - 1.0) < 1e-12, "unit offset ape != 1");

    motion::MotionSequence lin;
    lin.fps = 20.0;
    lin.joints = 2;
    lin.positions = Matrix(12, 6);
    // Dyadic slope so uniform motion has exactly zero second differences.
    for (int t = 0; t < 12; ++t)
        for (int k = 0; k < 6; ++k) lin.positions(t, k) = 0.375 * t * (k + 1);
    c.expect(eval::avg_stat(lin, 3) == 0.0, "jerk of linear motion != 0");

    motion::MotionSequence rnd;
    rnd.fps = 20.0;
    rnd.joints = 4;
    rnd.positions = testutil::random_matrix(30, 12, rng);
    const eval::Histogram h = eval::acceleration_histogram({&rnd}, eval::JointGroup{"all", {}}, 0.05);
    double total = 0.0;
    for (double f : h.rel_freq) total += f;
    c.expect(std::fabs(total - 1.0) <= 1e-9, "histogram frequencies sum to " + fmt(total));

    // Order composition: jerk(x) == acceleration(first difference of x).
    motion::MotionSequence d;
    d.fps = 20.0;
    d.joints = 4;
    d.positions = Matrix(29, 12);
    for (int t = 0; t < 29; ++t)
        for (int k = 0; k < 12; ++k) d.positions(t, k) = rnd.positions(t + 1, k) - rnd.positions(t, k);
    const Matrix jerk = eval::derivative_magnitudes(rnd, 3);
    const Matrix acc = eval::derivative_magnitudes(d, 2);
    bool same = jerk.same_shape(acc);
    for (std::size_t i = 0; same && i < jerk.size(); ++i)
        if (std::fabs(jerk.data()[i] - acc.data()[i]) > 1e-12) same = false;
    c.expect(same, "order composition identity");

    return {c.ok, c.ok ? "APE/jerk/histogram unit identities hold" : c.first_failure};
}

// ---------------------------------------------------------------- criterion 8

Outcome criterion_bvh_fk() {
    Check c;
    const char* fixture = R"(HIERARCHY
ROOT a
{
  OFFSET 0 0 0
  CHANNELS 3 Zrotation Xrotation Yrotation
  JOINT b
  {
    OFFSET 0 1 0
    CHANNELS 3 Xrotation Yrotation Zrotation
    End Site
    {
      OFFSET 0 1 0
    }
  }
}
MOTION
Frames: 1
Frame Time: 0.05
90 0 0 90 0 0
)";
    const auto [skel, seq] = motion::parse_bvh(fixture);
    const motion::MotionSequence m = motion::forward_kinematics(skel, seq);
    // Hand computation: Rz(90) sends (0,1,0) to (-1,0,0); the end site adds
    // Rz(90)*Rx(90)*(0,1,0) = Rz(90)*(0,0,1) = (0,0,1).
    c.expect(std::fabs(m.joint(0, 1)[0] + 1.0) < 1e-9 && std::fabs(m.joint(0, 1)[1]) < 1e-9 &&
                 std::fabs(m.joint(0, 1)[2]) < 1e-9,
             "joint b position");
    c.expect(std::fabs(m.joint(0, 2)[0] + 1.0) < 1e-9 && std::fabs(m.joint(0, 2)[1]) < 1e-9 &&
                 std::fabs(m.joint(0, 2)[2] - 1.0) < 1e-9,
             "end site position");

    // Bone lengths under 100 random rotation frames.
    Rng rng(808);
    motion::JointRotationSequence rot;
    rot.frame_time = 0.05;
    rot.frames = testutil::random_matrix(100, 6, rng, -180.0, 180.0);
    const motion::MotionSequence rnd = motion::forward_kinematics(skel, rot);
    double worst = 0.0;
    for (int t = 0; t < 100; ++t)
        for (int j = 1; j < 3; ++j) {
            const double* child = rnd.joint(t, j);
            const double* parent = rnd.joint(t, j - 1);
            const double dx = child[0] - parent[0], dy = child[1] - parent[1], dz = child[2] - parent[2];
            worst = std::max(worst, std::fabs(std::sqrt(dx * dx + dy * dy + dz * dz) - 1.0));
        }
    c.expect(worst < 1e-9, "bone length drift " + fmt(worst));
    return {c.ok, c.ok ? "fixtures match hand computation; bone drift " + fmt(worst) : c.first_failure};
}

// ---------------------------------------------------------------- criterion 9

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(GG_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    return std::system(cmd.c_str());
}

Outcome criterion_determinism(const std::string& scratch) {
    synth::SynthSpec spec;
    spec.n_utterances = 10;
    spec.n_train = 7;
    spec.n_val = 2;
    spec.n_test = 1;
    const std::string corpus_dir = scratch + "/corpus_det";
    synth::gen_corpus(spec, corpus_dir);

    Check c;
    const std::string a = scratch + "/det_a.ckpt", b = scratch + "/det_b.ckpt";
    c.expect(run_cli("train-dae --corpus " + corpus_dir + " --dz 16 --epochs 3 --seed 7 --out " + a) == 0,
             "train-dae run 1 failed");
    c.expect(run_cli("train-dae --corpus " + corpus_dir + " --dz 16 --epochs 3 --seed 7 --out " + b) == 0,
             "train-dae run 2 failed");
    c.expect(!read_file(a).empty() && read_file(a) == read_file(b), "dae manifests differ");
    c.expect(!read_file(a + ".bin").empty() && read_file(a + ".bin") == read_file(b + ".bin"), "dae blobs differ");

    const std::string sa = scratch + "/det_se_a.ckpt", sb = scratch + "/det_se_b.ckpt";
    const std::string net_flags = " --kind prosodic --epochs 2 --seed 9 ";
    c.expect(run_cli("train-speech --corpus " + corpus_dir + " --dae " + a + net_flags + "--out " + sa) == 0,
             "train-speech run 1 failed");
    c.expect(run_cli("train-speech --corpus " + corpus_dir + " --dae " + a + net_flags + "--out " + sb) == 0,
             "train-speech run 2 failed");
    c.expect(!read_file(sa).empty() && read_file(sa) == read_file(sb), "speech manifests differ");
    c.expect(!read_file(sa + ".bin").empty() && read_file(sa + ".bin") == read_file(sb + ".bin"),
             "speech blobs differ");
    return {c.ok, c.ok ? "re-runs produced byte-identical checkpoints (dae + speech)" : c.first_failure};
}

// --------------------------------------------------------------- criterion 10

Outcome criterion_five_run_protocol(const std::string& scratch) {
    synth::SynthSpec spec;
    spec.n_utterances = 10;
    spec.n_train = 7;
    spec.n_val = 2;
    spec.n_test = 1;
    const std::string corpus_dir = scratch + "/corpus_sweep";
    synth::gen_corpus(spec, corpus_dir);
    const train::Corpus corpus = train::load_corpus(corpus_dir, audio::FeatureKind::Prosodic);

    train::TrainConfig cfg;
    cfg.epochs = 2;
    cfg.d_z = 8;
    cfg.kind = audio::FeatureKind::Prosodic;
    const train::SweepResult result = train::sweep_dz(corpus, cfg, {16}, 5, 2);

    Check c;
    c.expect(result.runs.size() == 5, "expected 5 runs, got " + std::to_string(result.runs.size()));
    std::set<std::uint64_t> seeds;
    for (const auto& r : result.runs) seeds.insert(r.seed);
    c.expect(seeds.size() == 5, "seeds not distinct");
    c.expect(result.rows.size() == 1, "one aggregate row expected");

    // The aggregate must be the mean/sd of exactly those five runs.
    std::vector<double> apes;
    for (const auto& r : result.runs) apes.push_back(r.ape);
    c.expect(std::fabs(result.rows[0].ape_mean - eval::mean(apes)) < 1e-12, "mean mismatch");
    c.expect(std::fabs(result.rows[0].ape_sd - eval::sample_sd(apes)) < 1e-12, "sd mismatch");

    const std::string csv = scratch + "/sweep.csv";
    train::write_sweep_csv(csv, result);
    const auto lines = textio::read_lines(csv);
    c.expect(lines.size() >= 2 && lines[0] == "d_z,ape_mean,ape_sd,jerk_mean,jerk_sd",
             "sweep CSV schema: " + (lines.empty() ? "<empty>" : lines[0]));
    return {c.ok, c.ok ? "5 seeded runs aggregated as mean+/-sd; schema matches" : c.first_failure};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> only;
    bool keep = false;
    std::string scratch;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--only" && i + 1 < argc) {
            for (const auto& tok : textio::split(argv[++i], ',')) only.insert(std::stoi(tok));
        } else if (arg == "--keep") {
            keep = true;
        } else if (arg == "--scratch" && i + 1 < argc) {
            scratch = argv[++i];
        } else {
            std::fprintf(stderr, "usage: acceptance [--only 1,2,...] [--scratch dir] [--keep]\n");
            return 2;
        }
    }
    auto wanted = [&](int n) { return only.empty() || only.count(n) > 0; };

    if (scratch.empty())
        scratch = (std::filesystem::temp_directory_path() / ("gg_acceptance_" + std::to_string(::getpid()))).string();
    std::filesystem::create_directories(scratch);

    struct Entry {
        int id;
        const char* name;
        Outcome outcome;
        double seconds;
    };
    std::vector<Entry> entries;
    E2EResults e2e;

    auto run = [&](int id, const char* name, auto&& fn) {
        if (!wanted(id)) return;
        const double t0 = now_s();
        Outcome out;
        try {
            out = fn();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        entries.push_back({id, name, out, now_s() - t0});
        std::printf("[%s] criterion %d: %s (%s) [%.1fs]\n", out.pass ? "PASS" : "FAIL", id, name,
                    out.detail.c_str(), now_s() - t0);
        std::fflush(stdout);
    };

    run(1, "gradient integrity", criterion_gradients);
    run(2, "feature oracle equivalence", criterion_feature_oracle);
    run(3, "prosodic formula exactness", criterion_prosodic_formulas);
    run(4, "autoencoder capacity trend", criterion_dae_capacity);
    if (wanted(5) || wanted(6)) {
        std::printf("  training end-to-end models (5 seeded runs: chain mfcc + chain prosodic + baseline)...\n");
        std::fflush(stdout);
        try {
            e2e = run_e2e(scratch);
        } catch (const std::exception& e) {
            std::printf("  end-to-end training failed: %s\n", e.what());
        }
    }
    run(5, "end-to-end learning beats static mean pose", [&] {
        if (!e2e.ran) return Outcome{false, "training runs unavailable"};
        return criterion_e2e_learning(e2e);
    });
    run(6, "smoothness ordering (jerk)", [&] {
        if (!e2e.ran) return Outcome{false, "training runs unavailable"};
        return criterion_smoothness(e2e);
    });
    run(7, "metric unit suite", criterion_metric_units);
    run(8, "BVH/FK fixtures", criterion_bvh_fk);
    run(9, "checkpoint determinism", [&] { return criterion_determinism(scratch); });
    run(10, "five-run reporting protocol", [&] { return criterion_five_run_protocol(scratch); });

    if (!keep) {
        std::error_code ec;
        std::filesystem::remove_all(scratch, ec);
    }

    int failures = 0;
    for (const auto& e : entries)
        if (!e.outcome.pass) ++failures;
    std::printf("%d/%zu criteria passed\n", static_cast<int>(entries.size()) - failures, entries.size());
    return failures == 0 ? 0 : 1;
}
