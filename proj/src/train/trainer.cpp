#include "train/trainer.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"
#include "eval/metrics.hpp"
#include "model/windows.hpp"
#include "nn/loss.hpp"

namespace gg::train {

void write_loss_log(const std::string& path, const std::vector<EpochLog>& log) {
    std::ostringstream out;
    out << "epoch,train_loss,val_loss,val_ape\n";
    for (const auto& e : log)
        out << e.epoch << ',' << textio::format_double(e.train_loss) << ',' << textio::format_double(e.val_loss)
            << ',' << textio::format_double(e.val_ape) << '\n';
    textio::write_file_atomic(path, out.str());
}

namespace {

Matrix gather_motion_rows(const Corpus& corpus, const std::vector<int>& split) {
    int total = 0;
    for (int i : split) total += corpus.at(i).motion.frames();
    if (total == 0) throw std::runtime_error("training split has no frames");
    Matrix rows(total, motion::kMotionFeatureDims);
    int at = 0;
    for (int i : split) {
        const Matrix raw = motion::raw_motion_features(corpus.at(i).motion);
        for (int t = 0; t < raw.rows(); ++t, ++at)
            for (int k = 0; k < raw.cols(); ++k) rows(at, k) = raw(t, k);
    }
    return rows;
}

Matrix take_rows(const Matrix& m, const std::vector<int>& idx) {
    Matrix out(static_cast<int>(idx.size()), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (int k = 0; k < m.cols(); ++k) out(static_cast<int>(i), k) = m(idx[i], k);
    return out;
}

// First differences along rows; row 0 copies row 1's difference.
Matrix delta_rows(const Matrix& m) {
    if (m.rows() < 2) throw std::runtime_error("delta_rows: need at least two rows");
    Matrix d(m.rows(), m.cols());
    for (int t = 1; t < m.rows(); ++t)
        for (int k = 0; k < m.cols(); ++k) d(t, k) = m(t, k) - m(t - 1, k);
    for (int k = 0; k < m.cols(); ++k) d(0, k) = d(1, k);
    return d;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows(), a.cols() + b.cols());
    for (int t = 0; t < a.rows(); ++t) {
        for (int k = 0; k < a.cols(); ++k) out(t, k) = a(t, k);
        for (int k = 0; k < b.cols(); ++k) out(t, a.cols() + k) = b(t, k);
    }
    return out;
}

}  // namespace

DaeTrainResult train_dae(const Corpus& corpus, const TrainConfig& cfg) {
    cfg.validate();
    if (corpus.train_set.empty()) throw std::runtime_error("train_dae: empty training split");

    const Matrix train_raw = gather_motion_rows(corpus, corpus.train_set);
    DaeTrainResult res;
    res.scaler = motion::ScalerParams::fit(train_raw);
    const Matrix train_rows = res.scaler.apply(train_raw);
    Matrix val_rows;
    if (!corpus.val_set.empty()) val_rows = res.scaler.apply(gather_motion_rows(corpus, corpus.val_set));

    const std::vector<double> input_std = nn::column_std(train_rows);

    Rng rng(cfg.seed);
    model::MotionED med = model::MotionED::init(cfg.d_z, motion::kMotionFeatureDims, rng);
    Rng rng_shuffle = rng.split(1);
    Rng rng_noise = rng.split(2);

    nn::AdamState adam;
    adam.lr = cfg.lr;
    adam.init(med.param_refs());

    std::vector<int> order(train_rows.rows());
    for (int i = 0; i < train_rows.rows(); ++i) order[i] = i;

    res.best_val_loss = std::numeric_limits<double>::infinity();
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng_shuffle.shuffle(order);
        double loss_sum = 0.0;
        std::size_t loss_count = 0;
        for (int start = 0; start < train_rows.rows(); start += cfg.batch_size) {
            const int count = std::min(cfg.batch_size, train_rows.rows() - start);
            std::vector<int> idx(order.begin() + start, order.begin() + start + count);
            const Matrix clean = take_rows(train_rows, idx);
            Matrix noisy = clean;
            nn::add_gaussian_noise(noisy, input_std, cfg.noise_scale, rng_noise);

            const model::DaeForward fwd = model::dae_forward(med, noisy);
            Matrix dloss;
            const double loss = nn::mse_loss(fwd.recon, clean, &dloss);
            model::MotionEDGrads grads;
            model::dae_backward(med, noisy, fwd, dloss, grads);
            nn::adam_step(adam, med.param_refs(), grads.refs());

            loss_sum += loss * static_cast<double>(clean.size());
            loss_count += clean.size();
        }

        EpochLog log;
        log.epoch = epoch;
        log.train_loss = loss_sum / static_cast<double>(loss_count);
        log.val_ape = std::numeric_limits<double>::quiet_NaN();
        if (val_rows.rows() > 0) {
            const model::DaeForward fwd = model::dae_forward(med, val_rows);
            log.val_loss = nn::mse_loss(fwd.recon, val_rows, nullptr);
        } else {
            log.val_loss = log.train_loss;
        }
        res.log.push_back(log);

        if (log.val_loss < res.best_val_loss) {
            res.best_val_loss = log.val_loss;
            res.best_epoch = epoch;
            res.model = med;
            res.adam = adam;
        }
    }
    return res;
}

namespace {

struct PreparedUtterance {
    Matrix windows;  // T x in
    Matrix targets;  // T x out
};

struct Chunk {
    int utterance;  // index into the prepared list
    int start;
    int length;
};

std::vector<Chunk> make_chunks(const std::vector<PreparedUtterance>& prepared, const std::vector<int>& which,
                               int bptt_len) {
    std::vector<Chunk> chunks;
    for (int u : which) {
        const int t = prepared[u].windows.rows();
        if (t <= 0) continue;
        if (t < bptt_len) {
            chunks.push_back({u, 0, t});
            continue;
        }
        int start = 0;
        for (; start + bptt_len <= t; start += bptt_len) chunks.push_back({u, start, bptt_len});
        // Cover the tail with one final (overlapping) chunk.
        if (start < t) chunks.push_back({u, t - bptt_len, bptt_len});
    }
    return chunks;
}

// Time-major batch assembly: row t*B + b <- utterance rows[start+t].
void fill_batch(const std::vector<PreparedUtterance>& prepared, const std::vector<Chunk>& batch, Matrix& x,
                Matrix& y) {
    const int steps = batch[0].length;
    const int b_count = static_cast<int>(batch.size());
    const int in = prepared[batch[0].utterance].windows.cols();
    const int out = prepared[batch[0].utterance].targets.cols();
    x = Matrix(steps * b_count, in);
    y = Matrix(steps * b_count, out);
    for (int b = 0; b < b_count; ++b) {
        const auto& pu = prepared[batch[b].utterance];
        for (int t = 0; t < steps; ++t) {
            const double* wx = pu.windows.row(batch[b].start + t);
            const double* wy = pu.targets.row(batch[b].start + t);
            double* rx = x.row(t * b_count + b);
            double* ry = y.row(t * b_count + b);
            for (int k = 0; k < in; ++k) rx[k] = wx[k];
            for (int k = 0; k < out; ++k) ry[k] = wy[k];
        }
    }
}

motion::MotionSequence positions_from_standardized(const Matrix& standardized, const motion::ScalerParams& scaler) {
    const Matrix raw = scaler.invert(standardized);
    motion::MotionSequence m;
    m.fps = motion::kMotionFps;
    m.joints = motion::kMotionJoints;
    m.positions = Matrix(raw.rows(), 3 * motion::kMotionJoints);
    for (int t = 0; t < raw.rows(); ++t)
        for (int k = 0; k < 3 * motion::kMotionJoints; ++k) m.positions(t, k) = raw(t, k);
    return m;
}

}  // namespace

NetTrainResult train_net(NetKind net_kind, const Corpus& corpus, const TrainConfig& cfg,
                         const model::MotionED* dae, const motion::ScalerParams* dae_scaler, double dropout_p) {
    cfg.validate();
    if (corpus.train_set.empty()) throw std::runtime_error("train_net: empty training split");
    if (net_kind == NetKind::SpeechE && (dae == nullptr || dae_scaler == nullptr))
        throw std::runtime_error("train_net: SpeechE training needs a trained motion autoencoder");
    if (net_kind == NetKind::SpeechE && dae->d_z() != cfg.d_z)
        throw std::runtime_error("train_net: config d_z=" + std::to_string(cfg.d_z) +
                                 " does not match the autoencoder bottleneck d_z=" + std::to_string(dae->d_z()));

    NetTrainResult res;
    if (net_kind == NetKind::SpeechE) {
        res.scaler = *dae_scaler;
    } else {
        res.scaler = motion::ScalerParams::fit(gather_motion_rows(corpus, corpus.train_set));
    }

    // Windows and targets for every utterance that participates.
    const int n_utts = static_cast<int>(corpus.utterances.size());
    std::vector<PreparedUtterance> prepared(n_utts);
    std::vector<bool> used(n_utts, false);
    for (int i : corpus.train_set) used[i] = true;
    for (int i : corpus.val_set) used[i] = true;
    for (int u = 0; u < n_utts; ++u) {
        if (!used[u]) continue;
        const Utterance& utt = corpus.at(u);
        if (utt.features.frames() == 0)
            throw std::runtime_error("train_net: utterance " + utt.id + " has no extracted features");
        if (utt.features.kind != cfg.kind)
            throw std::runtime_error("train_net: corpus features are " + audio::kind_name(utt.features.kind) +
                                     ", config wants " + audio::kind_name(cfg.kind));
        prepared[u].windows = model::build_context_windows(utt.features).flat;
        const Matrix standardized = res.scaler.apply(motion::raw_motion_features(utt.motion));
        if (net_kind == NetKind::Baseline) {
            prepared[u].targets = standardized;
        } else {
            const Matrix z = model::encode_motion(*dae, standardized);
            prepared[u].targets = hstack(z, delta_rows(z));
        }
    }

    const int in_dim = model::kWindowFrames * audio::kind_dims(cfg.kind);
    const int out_dim = net_kind == NetKind::Baseline ? motion::kMotionFeatureDims : 2 * cfg.d_z;

    Rng rng(cfg.seed);
    model::SpeechNet net = model::SpeechNet::init(in_dim, out_dim, cfg.kind, rng);
    Rng rng_shuffle = rng.split(1);
    Rng rng_dropout = rng.split(2);

    nn::AdamState adam;
    adam.lr = cfg.lr;
    adam.init(net.param_refs());

    std::vector<Chunk> chunks = make_chunks(prepared, corpus.train_set, cfg.bptt_len);
    if (chunks.empty()) throw std::runtime_error("train_net: no training chunks");
    const int chunks_per_batch = std::max(1, cfg.batch_size / cfg.bptt_len);

    res.best_val_loss = std::numeric_limits<double>::infinity();
    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        rng_shuffle.shuffle(chunks);
        // Batches need a uniform chunk length; group by length, longest first.
        std::map<int, std::vector<Chunk>, std::greater<int>> pools;
        for (const auto& c : chunks) pools[c.length].push_back(c);

        double loss_sum = 0.0;
        std::size_t loss_count = 0;
        Matrix x, y, dloss;
        for (const auto& [len, pool] : pools) {
            for (std::size_t start = 0; start < pool.size(); start += chunks_per_batch) {
                const std::size_t end = std::min(start + chunks_per_batch, pool.size());
                const std::vector<Chunk> batch(pool.begin() + start, pool.begin() + end);
                fill_batch(prepared, batch, x, y);

                model::SpeechNetCache cache;
                const Matrix pred = model::speechnet_forward(net, x, len, static_cast<int>(batch.size()),
                                                             nn::Mode::Train, &rng_dropout, &cache, dropout_p);
                const double loss = nn::mse_loss(pred, y, &dloss);
                model::SpeechNetGrads grads;
                model::speechnet_backward(net, cache, dloss, grads);
                nn::clip_global_norm(grads.refs(), 5.0);
                nn::adam_step(adam, net.param_refs(), grads.refs());

                loss_sum += loss * static_cast<double>(pred.size());
                loss_count += pred.size();
            }
        }

        EpochLog log;
        log.epoch = epoch;
        log.train_loss = loss_sum / static_cast<double>(loss_count);
        log.val_ape = std::numeric_limits<double>::quiet_NaN();

        if (!corpus.val_set.empty()) {
            double vloss_sum = 0.0;
            std::size_t vloss_count = 0;
            std::vector<double> apes;
            for (int u : corpus.val_set) {
                const auto& pu = prepared[u];
                const int t = pu.windows.rows();
                const Matrix pred = model::speechnet_forward(net, pu.windows, t, 1, nn::Mode::Infer, nullptr, nullptr);
                vloss_sum += nn::mse_loss(pred, pu.targets, nullptr) * static_cast<double>(pred.size());
                vloss_count += pred.size();

                Matrix standardized;
                if (net_kind == NetKind::Baseline) {
                    standardized = pred;
                } else {
                    Matrix z(t, cfg.d_z);
                    for (int i = 0; i < t; ++i)
                        for (int k = 0; k < cfg.d_z; ++k) z(i, k) = pred(i, k);
                    standardized = model::decode_motion(*dae, z);
                }
                const motion::MotionSequence synth = positions_from_standardized(standardized, res.scaler);
                apes.push_back(eval::ape(corpus.at(u).motion, synth));
            }
            log.val_loss = vloss_sum / static_cast<double>(vloss_count);
            log.val_ape = eval::mean(apes);
        } else {
            log.val_loss = log.train_loss;
        }
        res.log.push_back(log);

        if (log.val_loss < res.best_val_loss) {
            res.best_val_loss = log.val_loss;
            res.best_epoch = epoch;
            res.best_val_ape = log.val_ape;
            res.net = net;
            res.adam = adam;
        }
    }
    return res;
}

SplitEval evaluate_chain_on_split(const Corpus& corpus, const std::vector<int>& split, model::ChainedModel& chain) {
    if (split.empty()) throw std::runtime_error("evaluate_chain_on_split: empty split");
    std::vector<double> apes, jerks;
    for (int u : split) {
        const Utterance& utt = corpus.at(u);
        const motion::MotionSequence synth = model::synthesize(chain, utt.features);
        apes.push_back(eval::ape(utt.motion, synth));
        jerks.push_back(eval::avg_stat(synth, 3));
    }
    return {eval::mean(apes), eval::mean(jerks)};
}

SplitEval evaluate_baseline_on_split(const Corpus& corpus, const std::vector<int>& split, model::SpeechNet& net,
                                     const motion::ScalerParams& scaler) {
    if (split.empty()) throw std::runtime_error("evaluate_baseline_on_split: empty split");
    std::vector<double> apes, jerks;
    for (int u : split) {
        const Utterance& utt = corpus.at(u);
        const motion::MotionSequence synth = model::synthesize_baseline(net, scaler, utt.features);
        apes.push_back(eval::ape(utt.motion, synth));
        jerks.push_back(eval::avg_stat(synth, 3));
    }
    return {eval::mean(apes), eval::mean(jerks)};
}

double static_mean_pose_ape(const Corpus& corpus, const std::vector<int>& eval_split) {
    if (corpus.train_set.empty() || eval_split.empty())
        throw std::runtime_error("static_mean_pose_ape: empty split");
    // Mean pose over all training frames.
    std::vector<double> mean_pose;
    std::size_t frames = 0;
    for (int u : corpus.train_set) {
        const Matrix& p = corpus.at(u).motion.positions;
        if (mean_pose.empty()) mean_pose.assign(p.cols(), 0.0);
        for (int t = 0; t < p.rows(); ++t, ++frames)
            for (int k = 0; k < p.cols(); ++k) mean_pose[k] += p(t, k);
    }
    for (double& v : mean_pose) v /= static_cast<double>(frames);

    std::vector<double> apes;
    for (int u : eval_split) {
        const motion::MotionSequence& truth = corpus.at(u).motion;
        motion::MotionSequence stat;
        stat.fps = truth.fps;
        stat.joints = truth.joints;
        stat.positions = Matrix(truth.frames(), truth.positions.cols());
        for (int t = 0; t < truth.frames(); ++t)
            for (int k = 0; k < truth.positions.cols(); ++k) stat.positions(t, k) = mean_pose[k];
        apes.push_back(eval::ape(truth, stat));
    }
    return eval::mean(apes);
}

}  // namespace gg::train
