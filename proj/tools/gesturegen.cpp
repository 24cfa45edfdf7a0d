// gesturegen: speech-driven gesture generation toolkit CLI.
//
// Workflow: synth-data -> train-dae -> train-speech (or train-baseline) ->
// synthesize -> evaluate. sweep-dz reproduces the representation-width
// analysis; features/import-bvh expose the extraction stages directly.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "audio/features.hpp"
#include "audio/wav.hpp"
#include "core/textio.hpp"
#include "eval/metrics.hpp"
#include "eval/report.hpp"
#include "model/synthesis.hpp"
#include "motion/bvh.hpp"
#include "motion/kinematics.hpp"
#include "synth/corpus_gen.hpp"
#include "train/config.hpp"
#include "train/corpus.hpp"
#include "train/model_io.hpp"
#include "train/sweep.hpp"
#include "train/trainer.hpp"

namespace fs = std::filesystem;
using namespace gg;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

void require_writable(const std::string& path, bool force) {
    if (path.empty()) return;
    if (fs::exists(path) && !force)
        throw std::runtime_error(path + " already exists; pass --force to overwrite");
}

std::string default_log_path(const std::string& ckpt_path) { return ckpt_path + ".losses.csv"; }

train::TrainConfig resolve_config(const std::string& config_path, const std::vector<std::string>& overrides) {
    train::TrainConfig cfg;
    if (!config_path.empty()) cfg = train::load_config_file(config_path);
    // overrides come in as "key=value" strings collected from typed flags
    for (const auto& kv : overrides) {
        const auto eq = kv.find('=');
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        if (key == "lr") cfg.lr = textio::parse_double(value, "--lr");
        else if (key == "batch_size") cfg.batch_size = static_cast<int>(textio::parse_long(value, "--batch-size"));
        else if (key == "epochs") cfg.epochs = static_cast<int>(textio::parse_long(value, "--epochs"));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(textio::parse_long(value, "--seed"));
        else if (key == "d_z") cfg.d_z = static_cast<int>(textio::parse_long(value, "--dz"));
        else if (key == "kind") cfg.kind = audio::kind_from_name(value);
        else if (key == "noise_scale") cfg.noise_scale = textio::parse_double(value, "--noise-scale");
        else if (key == "bptt_len") cfg.bptt_len = static_cast<int>(textio::parse_long(value, "--bptt-len"));
    }
    cfg.validate();
    return cfg;
}

// Typed CLI flags that fold into the config override list.
struct ConfigFlags {
    std::string config_path;
    std::vector<std::string> overrides;

    void attach(CLI::App* cmd, bool with_kind) {
        cmd->add_option("--config", config_path, "key=value config file");
        auto push = [this](const std::string& key) {
            return [this, key](const std::string& v) { overrides.push_back(key + "=" + v); };
        };
        cmd->add_option_function<std::string>("--lr", push("lr"), "learning rate");
        cmd->add_option_function<std::string>("--batch-size", push("batch_size"), "frames per optimizer step");
        cmd->add_option_function<std::string>("--epochs", push("epochs"), "training epochs");
        cmd->add_option_function<std::string>("--seed", push("seed"), "random seed");
        cmd->add_option_function<std::string>("--dz", push("d_z"), "representation width");
        cmd->add_option_function<std::string>("--noise-scale", push("noise_scale"), "denoising noise scale");
        cmd->add_option_function<std::string>("--bptt-len", push("bptt_len"), "training chunk length (frames)");
        if (with_kind)
            cmd->add_option_function<std::string>("--kind", push("kind"),
                                                  "feature kind: mfcc|spectrogram|prosodic|mfcc+pros|spectr+pros");
    }
};

std::map<std::string, std::string> base_meta(const std::string& command, const train::TrainConfig& cfg,
                                             const std::string& corpus) {
    return {
        {"command", command},
        {"config", train::config_echo(cfg)},
        {"corpus", corpus},
        {"seed", std::to_string(cfg.seed)},
    };
}

// ---- evaluate ----

struct Condition {
    std::string label;
    std::string dir;
};

Condition parse_condition(const std::string& arg) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos) return {fs::path(arg).filename().string(), arg};
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

motion::MotionSequence truncated(const motion::MotionSequence& m, int t) {
    motion::MotionSequence out;
    out.fps = m.fps;
    out.joints = m.joints;
    out.positions = Matrix(t, m.positions.cols());
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < m.positions.cols(); ++k) out.positions(i, k) = m.positions(i, k);
    return out;
}

int run_evaluate(const std::vector<std::string>& pred_args, const std::string& truth_dir, const std::string& group,
                 const std::string& skeleton_path, double bin_width, const std::string& out_csv,
                 const std::string& out_svg, bool force) {
    require_writable(out_csv, force);
    require_writable(out_svg, force);

    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(truth_dir))
        if (entry.path().extension() == ".csv") ids.push_back(entry.path().stem().string());
    std::sort(ids.begin(), ids.end());
    if (ids.empty()) throw std::runtime_error("no .csv motion files in " + truth_dir);

    eval::JointGroup jg;
    jg.name = group;
    if (group != "all") {
        std::string skel_file = skeleton_path;
        if (skel_file.empty()) {
            for (const std::string cand :
                 {truth_dir + "/skeleton.txt", (fs::path(truth_dir).parent_path() / "skeleton.txt").string()})
                if (textio::file_exists(cand)) {
                    skel_file = cand;
                    break;
                }
            if (skel_file.empty())
                throw std::runtime_error("joint group '" + group + "' needs --skeleton (no skeleton.txt found)");
        }
        jg = eval::resolve_group(motion::read_skeleton_txt(skel_file), group);
    }

    eval::EvaluationReport report;
    report.group_name = group;
    report.metadata["truth"] = truth_dir;
    report.metadata["group"] = group;
    report.metadata["bin_width"] = textio::format_double(bin_width);

    std::vector<motion::MotionSequence> truth_seqs;
    for (const auto& id : ids) truth_seqs.push_back(motion::read_motion_csv(truth_dir + "/" + id + ".csv"));

    for (const auto& arg : pred_args) {
        const Condition cond = parse_condition(arg);
        std::vector<double> apes, accs, jerks;
        std::vector<motion::MotionSequence> preds;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            const std::string pred_path = cond.dir + "/" + ids[i] + ".csv";
            if (!textio::file_exists(pred_path))
                throw std::runtime_error(cond.label + " is missing prediction " + pred_path);
            motion::MotionSequence pred = motion::read_motion_csv(pred_path);
            const int t = std::min(pred.frames(), truth_seqs[i].frames());
            pred = truncated(pred, t);
            const motion::MotionSequence truth = truncated(truth_seqs[i], t);
            apes.push_back(eval::ape(truth, pred));
            accs.push_back(eval::avg_stat(pred, 2, jg.indices));
            jerks.push_back(eval::avg_stat(pred, 3, jg.indices));
            preds.push_back(std::move(pred));
        }
        report.conditions.push_back({cond.label, eval::mean(apes), eval::sample_sd(apes), eval::mean(accs),
                                     eval::sample_sd(accs), eval::mean(jerks), eval::sample_sd(jerks)});
        std::vector<const motion::MotionSequence*> ptrs;
        for (const auto& p : preds) ptrs.push_back(&p);
        report.histograms.push_back({cond.label, eval::acceleration_histogram(ptrs, jg, bin_width)});
    }

    // Ground-truth reference row and histogram.
    {
        std::vector<double> accs, jerks;
        std::vector<const motion::MotionSequence*> ptrs;
        for (const auto& m : truth_seqs) {
            accs.push_back(eval::avg_stat(m, 2, jg.indices));
            jerks.push_back(eval::avg_stat(m, 3, jg.indices));
            ptrs.push_back(&m);
        }
        report.conditions.push_back({"ground_truth", 0.0, 0.0, eval::mean(accs), eval::sample_sd(accs),
                                     eval::mean(jerks), eval::sample_sd(jerks)});
        report.histograms.push_back({"ground_truth", eval::acceleration_histogram(ptrs, jg, bin_width)});
    }

    if (!out_csv.empty()) eval::write_report_csv(out_csv, report);
    if (!out_svg.empty()) eval::write_histogram_svg(out_svg, report);
    for (const auto& c : report.conditions)
        std::cout << c.name << ": ape=" << textio::format_double(c.ape_mean) << " acc=" << textio::format_double(
                         c.acc_mean)
                  << " jerk=" << textio::format_double(c.jerk_mean) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"speech-driven gesture generation toolkit"};
    app.require_subcommand(1);

    try {
        // ---- synth-data ----
        auto* synth_cmd = app.add_subcommand("synth-data", "generate the synthetic oracle corpus");
        synth::SynthSpec spec;
        std::string synth_out;
        bool synth_force = false;
        synth_cmd->add_option("--out", synth_out, "output corpus directory")->required();
        synth_cmd->add_option("--n", spec.n_utterances, "utterance count");
        synth_cmd->add_option("--seed", spec.seed, "corpus seed");
        synth_cmd->add_option("--train", spec.n_train, "training utterances");
        synth_cmd->add_option("--val", spec.n_val, "validation utterances");
        synth_cmd->add_option("--test", spec.n_test, "test utterances");
        synth_cmd->add_option("--dur-min", spec.duration_min_s, "minimum utterance seconds");
        synth_cmd->add_option("--dur-max", spec.duration_max_s, "maximum utterance seconds");
        synth_cmd->add_option("--voiced-gain", spec.voiced_gain, "voiced amplitude multiplier");
        synth_cmd->add_flag("--force", synth_force, "overwrite an existing corpus");
        synth_cmd->callback([&] {
            require_writable(synth_out + "/split.txt", synth_force);
            synth::gen_corpus(spec, synth_out);
            std::cout << "wrote corpus with " << spec.n_utterances << " utterances to " << synth_out << "\n";
        });

        // ---- features ----
        auto* feat_cmd = app.add_subcommand("features", "extract speech features at 20 fps");
        std::string feat_in, feat_kind = "mfcc", feat_out;
        bool feat_force = false;
        feat_cmd->add_option("--in", feat_in, "input WAV file")->required();
        feat_cmd->add_option("--kind", feat_kind, "mfcc|spectrogram|prosodic|mfcc+pros|spectr+pros");
        feat_cmd->add_option("--out", feat_out, "output CSV")->required();
        feat_cmd->add_flag("--force", feat_force, "overwrite output");
        feat_cmd->callback([&] {
            require_writable(feat_out, feat_force);
            const audio::AudioBuffer buf = audio::load_wav(feat_in);
            const audio::FeatureSequence fs20 = audio::extract_at_20fps(buf, audio::kind_from_name(feat_kind));
            audio::write_feature_csv(feat_out, fs20, "command=features in=" + feat_in + " kind=" + feat_kind);
            std::cout << "wrote " << fs20.frames() << "x" << fs20.dims() << " " << feat_kind << " features to "
                      << feat_out << "\n";
        });

        // ---- import-bvh ----
        auto* bvh_cmd = app.add_subcommand("import-bvh", "BVH -> global joint positions at 20 fps");
        std::string bvh_in, bvh_out;
        bool bvh_force = false;
        double bvh_fps = 20.0;
        bvh_cmd->add_option("--in", bvh_in, "input BVH file")->required();
        bvh_cmd->add_option("--out", bvh_out, "output motion CSV")->required();
        bvh_cmd->add_option("--fps", bvh_fps, "target framerate");
        bvh_cmd->add_flag("--force", bvh_force, "overwrite output");
        bvh_cmd->callback([&] {
            require_writable(bvh_out, bvh_force);
            const auto [skel, rot] = motion::load_bvh(bvh_in);
            motion::MotionSequence m = motion::forward_kinematics(skel, rot);
            if (m.fps > bvh_fps) m = motion::resample(m, bvh_fps);
            motion::write_motion_csv(bvh_out, m, "command=import-bvh in=" + bvh_in);
            std::cout << "wrote " << m.frames() << " frames, " << m.joints << " joints to " << bvh_out << "\n";
        });

        // ---- train-dae ----
        auto* dae_cmd = app.add_subcommand("train-dae", "train the motion denoising autoencoder");
        std::string dae_corpus, dae_out, dae_log;
        ConfigFlags dae_flags;
        bool dae_force = false;
        dae_cmd->add_option("--corpus", dae_corpus, "corpus directory")->required();
        dae_cmd->add_option("--out", dae_out, "output checkpoint")->required();
        dae_cmd->add_option("--log", dae_log, "loss log CSV (default <out>.losses.csv)");
        dae_flags.attach(dae_cmd, false);
        dae_cmd->add_flag("--force", dae_force, "overwrite output");
        dae_cmd->callback([&] {
            const train::TrainConfig cfg = resolve_config(dae_flags.config_path, dae_flags.overrides);
            require_writable(dae_out, dae_force);
            const std::string log_path = dae_log.empty() ? default_log_path(dae_out) : dae_log;
            require_writable(log_path, dae_force);

            const train::Corpus corpus = train::load_corpus(dae_corpus, std::nullopt);
            train::DaeTrainResult res = train::train_dae(corpus, cfg);
            auto meta = base_meta("train-dae", cfg, dae_corpus);
            meta["epoch"] = std::to_string(res.best_epoch);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", res.best_val_loss);
            meta["val_loss"] = buf;
            train::save_dae_checkpoint(dae_out, res.model, res.scaler, res.adam, meta);
            train::write_loss_log(log_path, res.log);
            std::cout << "best epoch " << res.best_epoch << " val_loss " << res.best_val_loss << " -> " << dae_out
                      << "\n";
        });

        // ---- train-speech / train-baseline ----
        struct NetCmd {
            CLI::App* cmd = nullptr;
            std::string corpus, dae, out, log;
            ConfigFlags flags;
            bool force = false;
        };
        NetCmd speech, baseline;
        speech.cmd = app.add_subcommand("train-speech", "train the speech-to-representation encoder");
        baseline.cmd = app.add_subcommand("train-baseline", "train the direct speech-to-pose baseline");
        for (NetCmd* nc : {&speech, &baseline}) {
            nc->cmd->add_option("--corpus", nc->corpus, "corpus directory")->required();
            nc->cmd->add_option("--out", nc->out, "output checkpoint")->required();
            nc->cmd->add_option("--log", nc->log, "loss log CSV (default <out>.losses.csv)");
            nc->flags.attach(nc->cmd, true);
            nc->cmd->add_flag("--force", nc->force, "overwrite output");
        }
        speech.cmd->add_option("--dae", speech.dae, "trained motion autoencoder checkpoint")->required();

        auto run_net = [&](NetCmd& nc, train::NetKind kind) {
            train::TrainConfig cfg = resolve_config(nc.flags.config_path, nc.flags.overrides);
            require_writable(nc.out, nc.force);
            const std::string log_path = nc.log.empty() ? default_log_path(nc.out) : nc.log;
            require_writable(log_path, nc.force);

            train::DaeCheckpoint dae_ck;
            const model::MotionED* dae_ptr = nullptr;
            const motion::ScalerParams* scaler_ptr = nullptr;
            if (kind == train::NetKind::SpeechE) {
                dae_ck = train::load_dae_checkpoint(nc.dae);
                // The bottleneck width comes from the autoencoder.
                cfg.d_z = dae_ck.med.d_z();
                dae_ptr = &dae_ck.med;
                scaler_ptr = &dae_ck.scaler;
            }

            const train::Corpus corpus = train::load_corpus(nc.corpus, cfg.kind);
            train::NetTrainResult res = train::train_net(kind, corpus, cfg, dae_ptr, scaler_ptr);
            auto meta = base_meta(kind == train::NetKind::SpeechE ? "train-speech" : "train-baseline", cfg, nc.corpus);
            meta["model_kind"] = kind == train::NetKind::SpeechE ? "speech_e" : "baseline";
            if (kind == train::NetKind::SpeechE) {
                meta["d_z"] = std::to_string(cfg.d_z);
                meta["dae"] = nc.dae;
            }
            meta["epoch"] = std::to_string(res.best_epoch);
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", res.best_val_loss);
            meta["val_loss"] = buf;
            train::save_net_checkpoint(nc.out, res.net, res.scaler, res.adam, meta);
            train::write_loss_log(log_path, res.log);
            std::cout << "best epoch " << res.best_epoch << " val_loss " << res.best_val_loss << " val_ape "
                      << res.best_val_ape << " -> " << nc.out << "\n";
        };
        speech.cmd->callback([&] { run_net(speech, train::NetKind::SpeechE); });
        baseline.cmd->callback([&] { run_net(baseline, train::NetKind::Baseline); });

        // ---- sweep-dz ----
        auto* sweep_cmd = app.add_subcommand("sweep-dz", "representation width sweep with repeated retraining");
        std::string sweep_corpus, sweep_dims = "8,32,64,128,256,325,384", sweep_out, sweep_svg;
        ConfigFlags sweep_flags;
        int sweep_runs = 5, sweep_jobs = 1;
        bool sweep_force = false;
        sweep_cmd->add_option("--corpus", sweep_corpus, "corpus directory")->required();
        sweep_cmd->add_option("--dims", sweep_dims, "comma-separated bottleneck widths");
        sweep_cmd->add_option("--runs", sweep_runs, "retrainings per width");
        sweep_cmd->add_option("--jobs", sweep_jobs, "parallel workers");
        sweep_cmd->add_option("--out", sweep_out, "aggregate CSV")->required();
        sweep_cmd->add_option("--svg", sweep_svg, "optional APE/jerk chart");
        sweep_flags.attach(sweep_cmd, true);
        sweep_cmd->add_flag("--force", sweep_force, "overwrite outputs");
        sweep_cmd->callback([&] {
            const train::TrainConfig cfg = resolve_config(sweep_flags.config_path, sweep_flags.overrides);
            require_writable(sweep_out, sweep_force);
            const std::string runs_path = sweep_out + ".runs.csv";
            require_writable(runs_path, sweep_force);
            require_writable(sweep_svg, sweep_force);

            std::vector<int> dims;
            for (const auto& tok : textio::split(sweep_dims, ','))
                dims.push_back(static_cast<int>(textio::parse_long(tok, "--dims")));

            const train::Corpus corpus = train::load_corpus(sweep_corpus, cfg.kind);
            const train::SweepResult result = train::sweep_dz(corpus, cfg, dims, sweep_runs, sweep_jobs);
            train::write_sweep_csv(sweep_out, result,
                                   "command=sweep-dz runs=" + std::to_string(sweep_runs) + " " +
                                       train::config_echo(cfg));
            train::write_sweep_runs_csv(runs_path, result);
            if (!sweep_svg.empty()) {
                eval::LineSeries ape_series{"APE", {}, {}, {}}, jerk_series{"jerk", {}, {}, {}};
                for (const auto& r : result.rows) {
                    ape_series.x.push_back(r.d_z);
                    ape_series.y.push_back(r.ape_mean);
                    ape_series.sd.push_back(r.ape_sd);
                    jerk_series.x.push_back(r.d_z);
                    jerk_series.y.push_back(r.jerk_mean);
                    jerk_series.sd.push_back(r.jerk_sd);
                }
                eval::write_line_chart_svg(sweep_svg, "Representation width sweep", "d_z", "mean over runs",
                                           {ape_series, jerk_series});
            }
            for (const auto& r : result.rows)
                std::cout << "d_z=" << r.d_z << " ape=" << r.ape_mean << "+/-" << r.ape_sd << " jerk=" << r.jerk_mean
                          << "+/-" << r.jerk_sd << "\n";
        });

        // ---- synthesize ----
        auto* syn_cmd = app.add_subcommand("synthesize", "audio -> motion with a trained model");
        std::string syn_model, syn_dae, syn_baseline, syn_audio, syn_out;
        bool syn_force = false;
        syn_cmd->add_option("--model", syn_model, "speech encoder checkpoint (chained with --dae)");
        syn_cmd->add_option("--dae", syn_dae, "motion autoencoder checkpoint");
        syn_cmd->add_option("--baseline", syn_baseline, "baseline checkpoint (alternative to --model/--dae)");
        syn_cmd->add_option("--audio", syn_audio, "input WAV")->required();
        syn_cmd->add_option("--out", syn_out, "output motion CSV")->required();
        syn_cmd->add_flag("--force", syn_force, "overwrite output");
        syn_cmd->callback([&] {
            require_writable(syn_out, syn_force);
            const audio::AudioBuffer buf = audio::load_wav(syn_audio);
            motion::MotionSequence m;
            std::string note;
            if (!syn_baseline.empty()) {
                if (!syn_model.empty() || !syn_dae.empty())
                    throw std::runtime_error("pass either --baseline or --model with --dae, not both");
                train::NetCheckpoint net_ck = train::load_net_checkpoint(syn_baseline);
                if (net_ck.meta.at("model_kind") != "baseline")
                    throw std::runtime_error(syn_baseline + " is not a baseline checkpoint");
                const audio::FeatureSequence fs20 = audio::extract_at_20fps(buf, net_ck.net.kind);
                m = model::synthesize_baseline(net_ck.net, net_ck.scaler, fs20);
                note = "command=synthesize baseline=" + syn_baseline + " audio=" + syn_audio;
            } else {
                if (syn_model.empty() || syn_dae.empty())
                    throw std::runtime_error("synthesize needs --model and --dae (or --baseline)");
                train::NetCheckpoint net_ck = train::load_net_checkpoint(syn_model);
                if (net_ck.meta.at("model_kind") != "speech_e")
                    throw std::runtime_error(syn_model + " is not a speech_e checkpoint");
                train::DaeCheckpoint dae_ck = train::load_dae_checkpoint(syn_dae);
                if (net_ck.net.out_dim() != 2 * dae_ck.med.d_z())
                    throw std::runtime_error("model/autoencoder width mismatch: encoder predicts " +
                                             std::to_string(net_ck.net.out_dim() / 2) + ", decoder expects " +
                                             std::to_string(dae_ck.med.d_z()));
                const audio::FeatureSequence fs20 = audio::extract_at_20fps(buf, net_ck.net.kind);
                model::ChainedModel chain{std::move(net_ck.net), dae_ck.med.dec, dae_ck.scaler};
                m = model::synthesize(chain, fs20);
                note = "command=synthesize model=" + syn_model + " dae=" + syn_dae + " audio=" + syn_audio;
            }
            motion::write_motion_csv(syn_out, m, note);
            std::cout << "wrote " << m.frames() << " frames to " << syn_out << "\n";
        });

        // ---- evaluate ----
        auto* eval_cmd = app.add_subcommand("evaluate", "objective metrics for predicted motion directories");
        std::vector<std::string> eval_preds;
        std::string eval_truth, eval_group = "all", eval_skel, eval_csv, eval_svg;
        double eval_bin_width = 0.05;
        bool eval_force = false;
        eval_cmd->add_option("--pred", eval_preds, "prediction directory (label=dir), repeatable")->required();
        eval_cmd->add_option("--truth", eval_truth, "ground-truth motion directory")->required();
        eval_cmd->add_option("--group", eval_group, "all|hands|shoulders");
        eval_cmd->add_option("--skeleton", eval_skel, "skeleton.txt for joint groups");
        eval_cmd->add_option("--bin-width", eval_bin_width, "histogram bin width");
        eval_cmd->add_option("--out", eval_csv, "report CSV");
        eval_cmd->add_option("--svg", eval_svg, "histogram SVG");
        eval_cmd->add_flag("--force", eval_force, "overwrite outputs");
        eval_cmd->callback([&] {
            run_evaluate(eval_preds, eval_truth, eval_group, eval_skel, eval_bin_width, eval_csv, eval_svg,
                         eval_force);
        });

        // ---- report ----
        auto* rep_cmd = app.add_subcommand("report", "render a sweep CSV as an SVG chart");
        std::string rep_sweep, rep_svg;
        bool rep_force = false;
        rep_cmd->add_option("--sweep", rep_sweep, "sweep CSV from sweep-dz")->required();
        rep_cmd->add_option("--svg", rep_svg, "output SVG")->required();
        rep_cmd->add_flag("--force", rep_force, "overwrite output");
        rep_cmd->callback([&] {
            require_writable(rep_svg, rep_force);
            eval::LineSeries ape_series{"APE", {}, {}, {}}, jerk_series{"jerk", {}, {}, {}};
            bool header = true;
            for (const auto& line : textio::read_lines(rep_sweep)) {
                if (line.empty() || line[0] == '#') continue;
                if (header) {
                    header = false;
                    continue;
                }
                const auto cells = textio::split(line, ',');
                if (cells.size() < 5) throw std::runtime_error(rep_sweep + ": expected 5 columns");
                ape_series.x.push_back(textio::parse_double(cells[0], rep_sweep));
                ape_series.y.push_back(textio::parse_double(cells[1], rep_sweep));
                ape_series.sd.push_back(textio::parse_double(cells[2], rep_sweep));
                jerk_series.x.push_back(ape_series.x.back());
                jerk_series.y.push_back(textio::parse_double(cells[3], rep_sweep));
                jerk_series.sd.push_back(textio::parse_double(cells[4], rep_sweep));
            }
            eval::write_line_chart_svg(rep_svg, "Representation width sweep", "d_z", "mean over runs",
                                       {ape_series, jerk_series});
            std::cout << "wrote " << rep_svg << "\n";
        });

        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
