#include "nn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gg::nn {

double grad_check(const std::function<double()>& loss_fn, const std::vector<ParamRef>& params,
                  const std::vector<ParamRef>& analytic_grads, int max_samples, double eps, std::uint64_t seed) {
    if (params.size() != analytic_grads.size()) throw std::invalid_argument("grad_check: param/grad count mismatch");
    std::size_t total = 0;
    for (const auto& p : params) total += p.size;
    if (total == 0) throw std::invalid_argument("grad_check: no parameters");

    std::vector<std::size_t> indices;
    if (total <= static_cast<std::size_t>(max_samples)) {
        indices.resize(total);
        for (std::size_t i = 0; i < total; ++i) indices[i] = i;
    } else {
        Rng rng(seed);
        for (int i = 0; i < max_samples; ++i)
            indices.push_back(static_cast<std::size_t>(rng.next_u64() % total));
    }

    double max_rel = 0.0;
    for (std::size_t flat : indices) {
        std::size_t ti = 0, off = flat;
        while (off >= params[ti].size) {
            off -= params[ti].size;
            ++ti;
        }
        double* slot = params[ti].data + off;
        const double analytic = analytic_grads[ti].data[off];

        const double saved = *slot;
        *slot = saved + eps;
        const double up = loss_fn();
        *slot = saved - eps;
        const double down = loss_fn();
        *slot = saved;

        const double fd = (up - down) / (2.0 * eps);
        const double denom = std::max({std::fabs(fd), std::fabs(analytic), 1e-4});
        max_rel = std::max(max_rel, std::fabs(fd - analytic) / denom);
    }
    return max_rel;
}

}  // namespace gg::nn
