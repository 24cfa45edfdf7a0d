#pragma once

#include "audio/features.hpp"
#include "model/nets.hpp"
#include "model/windows.hpp"
#include "motion/kinematics.hpp"
#include "motion/scaler.hpp"

namespace gg::model {

// Test-time combination: the speech encoder predicts representations and
// the motion decoder turns them into pose features.
struct ChainedModel {
    SpeechNet speech_e;
    nn::DenseParams motion_d;  // 384 x d_z
    motion::ScalerParams scaler;

    int d_z() const { return motion_d.in(); }
};

// Speech features -> windows -> SpeechE (infer) -> z half -> MotionD ->
// destandardize -> positions. No smoothing is applied to the output.
motion::MotionSequence synthesize(ChainedModel& chain, const audio::FeatureSequence& fs);

// The baseline maps windows straight to standardized [pose, velocity]; the
// velocity half is ignored at inference.
motion::MotionSequence synthesize_baseline(SpeechNet& net, const motion::ScalerParams& scaler,
                                           const audio::FeatureSequence& fs);

}  // namespace gg::model
