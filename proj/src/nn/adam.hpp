#pragma once

#include <vector>

#include "core/matrix.hpp"

namespace gg::nn {

// Adam with bias correction. beta/epsilon defaults follow the usual
// convention; only the learning rate is a tuned quantity here.
struct AdamState {
    double lr = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    long t = 0;
    std::vector<std::vector<double>> m, v;

    void init(const std::vector<ParamRef>& params);
    bool initialized() const { return !m.empty(); }
};

// One update over the full parameter list. Throws with a diagnostic naming
// the offending tensor if any gradient is non-finite.
void adam_step(AdamState& state, const std::vector<ParamRef>& params, const std::vector<ParamRef>& grads);

// Scales all gradients so their global L2 norm is at most max_norm.
// Returns the pre-clip norm.
double clip_global_norm(const std::vector<ParamRef>& grads, double max_norm);

}  // namespace gg::nn
