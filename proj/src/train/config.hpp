#pragma once

#include <cstdint>
#include <string>

#include "audio/features.hpp"

namespace gg::train {

// Training hyperparameters. Defaults are desk-scale: the reference regime
// (batch 2048, 120 epochs on ~200k frames) is reachable by overriding
// batch_size/epochs in a config file or on the command line.
struct TrainConfig {
    double lr = 0.001;
    int batch_size = 128;  // frames per optimizer step
    int epochs = 20;
    std::uint64_t seed = 42;
    int d_z = 64;
    audio::FeatureKind kind = audio::FeatureKind::Mfcc;
    double noise_scale = 0.05;
    int bptt_len = 20;  // chunk length (1 s at 20 fps); GRU state resets per chunk

    void validate() const;
};

// key=value file, '#' comments. Unknown keys are rejected.
TrainConfig load_config_file(const std::string& path, const TrainConfig& base = TrainConfig());

// One-line echo of the resolved configuration for artifact headers.
std::string config_echo(const TrainConfig& cfg);

}  // namespace gg::train
