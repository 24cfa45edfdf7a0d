#include "nn/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace gg::nn {

void AdamState::init(const std::vector<ParamRef>& params) {
    m.clear();
    v.clear();
    for (const auto& p : params) {
        m.emplace_back(p.size, 0.0);
        v.emplace_back(p.size, 0.0);
    }
    t = 0;
}

void adam_step(AdamState& state, const std::vector<ParamRef>& params, const std::vector<ParamRef>& grads) {
    if (params.size() != grads.size()) throw std::invalid_argument("adam_step: param/grad count mismatch");
    if (!state.initialized()) state.init(params);
    if (state.m.size() != params.size()) throw std::invalid_argument("adam_step: state does not match params");

    for (std::size_t i = 0; i < grads.size(); ++i) {
        if (grads[i].size != params[i].size)
            throw std::invalid_argument("adam_step: size mismatch for tensor " + params[i].name);
        for (std::size_t k = 0; k < grads[i].size; ++k)
            if (!std::isfinite(grads[i].data[k]))
                throw std::runtime_error("adam_step: non-finite gradient in tensor '" + grads[i].name +
                                         "' at index " + std::to_string(k) + " (step " + std::to_string(state.t + 1) +
                                         ")");
    }

    state.t += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        double* w = params[i].data;
        const double* g = grads[i].data;
        double* mi = state.m[i].data();
        double* vi = state.v[i].data();
        for (std::size_t k = 0; k < params[i].size; ++k) {
            mi[k] = state.beta1 * mi[k] + (1.0 - state.beta1) * g[k];
            vi[k] = state.beta2 * vi[k] + (1.0 - state.beta2) * g[k] * g[k];
            const double mhat = mi[k] / bc1;
            const double vhat = vi[k] / bc2;
            w[k] -= state.lr * mhat / (std::sqrt(vhat) + state.epsilon);
        }
    }
}

double clip_global_norm(const std::vector<ParamRef>& grads, double max_norm) {
    double sq = 0.0;
    for (const auto& g : grads)
        for (std::size_t k = 0; k < g.size; ++k) sq += g.data[k] * g.data[k];
    const double norm = std::sqrt(sq);
    if (norm > max_norm && norm > 0.0) {
        const double scale = max_norm / norm;
        for (const auto& g : grads)
            for (std::size_t k = 0; k < g.size; ++k) g.data[k] *= scale;
    }
    return norm;
}

}  // namespace gg::nn
