#pragma once

#include <map>
#include <string>

#include "model/nets.hpp"
#include "motion/scaler.hpp"
#include "nn/adam.hpp"

namespace gg::train {

struct DaeCheckpoint {
    model::MotionED med;
    motion::ScalerParams scaler;
    std::map<std::string, std::string> meta;
};

struct NetCheckpoint {
    model::SpeechNet net;
    motion::ScalerParams scaler;
    std::map<std::string, std::string> meta;
};

// Model checkpoints carry weights, optimizer state, the fitted scaler and
// enough metadata to rebuild the network without the training corpus.
void save_dae_checkpoint(const std::string& path, model::MotionED& med, const motion::ScalerParams& scaler,
                         const nn::AdamState& adam, const std::map<std::string, std::string>& extra_meta);
DaeCheckpoint load_dae_checkpoint(const std::string& path);

void save_net_checkpoint(const std::string& path, model::SpeechNet& net, const motion::ScalerParams& scaler,
                         const nn::AdamState& adam, const std::map<std::string, std::string>& extra_meta);
NetCheckpoint load_net_checkpoint(const std::string& path);

// "motion_ed", "speech_e" or "baseline" without loading the tensors.
std::string checkpoint_model_kind(const std::string& path);

}  // namespace gg::train
