#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace gg::nn {

// Mean squared error over all elements; grad (optional) receives
// 2*(pred - target)/count.
double mse_loss(const Matrix& pred, const Matrix& target, Matrix* grad);

// Adds independent Gaussian noise with per-dimension standard deviation
// scale * per_dim_std[d].
void add_gaussian_noise(Matrix& x, const std::vector<double>& per_dim_std, double scale, Rng& rng);

// Per-dimension standard deviation of the rows, used to size the noise.
std::vector<double> column_std(const Matrix& rows);

}  // namespace gg::nn
