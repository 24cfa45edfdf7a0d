#pragma once

#include <string>
#include <vector>

#include "model/nets.hpp"
#include "model/synthesis.hpp"
#include "nn/adam.hpp"
#include "train/config.hpp"
#include "train/corpus.hpp"

namespace gg::train {

struct EpochLog {
    int epoch = 0;
    double train_loss = 0.0;
    double val_loss = 0.0;
    double val_ape = 0.0;  // NaN where APE is not defined (DAE training)
};

// Loss logs: CSV "epoch,train_loss,val_loss,val_ape".
void write_loss_log(const std::string& path, const std::vector<EpochLog>& log);

struct DaeTrainResult {
    model::MotionED model;  // parameters at the best-validation epoch
    motion::ScalerParams scaler;
    nn::AdamState adam;
    std::vector<EpochLog> log;
    int best_epoch = 0;
    double best_val_loss = 0.0;
};

// Denoising-autoencoder training: shuffled single-frame minibatches,
// Gaussian input noise scaled per dimension, MSE reconstruction loss. The
// scaler is fitted on the training split only.
DaeTrainResult train_dae(const Corpus& corpus, const TrainConfig& cfg);

enum class NetKind { SpeechE, Baseline };

struct NetTrainResult {
    model::SpeechNet net;
    motion::ScalerParams scaler;
    nn::AdamState adam;
    std::vector<EpochLog> log;
    int best_epoch = 0;
    double best_val_loss = 0.0;
    double best_val_ape = 0.0;
};

// Speech-to-representation (SpeechE) or speech-to-pose (baseline) training.
// Sequences are cut into bptt_len chunks with GRU state reset per chunk;
// the loss weighs the value and delta halves equally; gradients are clipped
// at global norm 5. For SpeechE the DAE supplies encode targets and the
// scaler; the baseline fits its own scaler on the training split.
NetTrainResult train_net(NetKind net_kind, const Corpus& corpus, const TrainConfig& cfg,
                         const model::MotionED* dae = nullptr, const motion::ScalerParams* dae_scaler = nullptr,
                         double dropout_p = 0.1);

// Mean APE and mean jerk of chained synthesis over the given utterances.
struct SplitEval {
    double ape = 0.0;
    double jerk = 0.0;
};
SplitEval evaluate_chain_on_split(const Corpus& corpus, const std::vector<int>& split, model::ChainedModel& chain);
SplitEval evaluate_baseline_on_split(const Corpus& corpus, const std::vector<int>& split, model::SpeechNet& net,
                                     const motion::ScalerParams& scaler);

// APE of predicting the training-split mean pose everywhere.
double static_mean_pose_ape(const Corpus& corpus, const std::vector<int>& eval_split);

}  // namespace gg::train
