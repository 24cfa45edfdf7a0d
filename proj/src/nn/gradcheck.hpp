#pragma once

#include <functional>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace gg::nn {

// Central-difference check of analytic gradients. Samples up to
// `max_samples` parameter entries (all of them when there are fewer),
// perturbs each by +/-eps, and returns the maximum relative error across
// the sample. The closure must be deterministic: dropout and noise
// injection disabled. Errors are measured against max(|fd|, |analytic|,
// 1e-4) so near-zero gradients do not amplify finite-difference noise.
double grad_check(const std::function<double()>& loss_fn, const std::vector<ParamRef>& params,
                  const std::vector<ParamRef>& analytic_grads, int max_samples = 200, double eps = 1e-5,
                  std::uint64_t seed = 12345);

}  // namespace gg::nn
