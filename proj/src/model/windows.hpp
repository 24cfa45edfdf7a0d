#pragma once

#include "audio/features.hpp"
#include "core/matrix.hpp"

namespace gg::model {

constexpr int kContextRadius = 30;  // frames on each side of t
constexpr int kWindowFrames = 2 * kContextRadius + 1;

// Per-frame context windows, stored flattened: row t is the concatenation
// of frames [t-C, t+C] (out-of-range indices clamp to the sequence edge),
// ready for the fully connected stack.
struct ContextWindows {
    Matrix flat;  // T x (61*D)
    int window = kWindowFrames;
    int dims = 0;

    int frames() const { return flat.rows(); }
};

ContextWindows build_context_windows(const audio::FeatureSequence& fs, int radius = kContextRadius);

}  // namespace gg::model
