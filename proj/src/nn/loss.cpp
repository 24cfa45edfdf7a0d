#include "nn/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace gg::nn {

double mse_loss(const Matrix& pred, const Matrix& target, Matrix* grad) {
    if (!pred.same_shape(target)) throw std::invalid_argument("mse_loss: shape mismatch");
    if (pred.size() == 0) throw std::invalid_argument("mse_loss: empty input");
    const double inv = 1.0 / static_cast<double>(pred.size());
    if (grad) *grad = Matrix(pred.rows(), pred.cols());
    // Row partials summed in fixed order keep the loss bit-reproducible.
    double total = 0.0;
    for (int i = 0; i < pred.rows(); ++i) {
        const double* a = pred.row(i);
        const double* b = target.row(i);
        double s = 0.0;
        for (int j = 0; j < pred.cols(); ++j) {
            const double d = a[j] - b[j];
            s += d * d;
            if (grad) grad->row(i)[j] = 2.0 * d * inv;
        }
        total += s;
    }
    return total * inv;
}

void add_gaussian_noise(Matrix& x, const std::vector<double>& per_dim_std, double scale, Rng& rng) {
    if (static_cast<int>(per_dim_std.size()) != x.cols())
        throw std::invalid_argument("add_gaussian_noise: std vector width mismatch");
    if (scale == 0.0) return;
    for (int i = 0; i < x.rows(); ++i) {
        double* row = x.row(i);
        for (int j = 0; j < x.cols(); ++j) {
            const double sd = scale * per_dim_std[j];
            if (sd > 0.0) row[j] += sd * rng.gaussian();
        }
    }
}

std::vector<double> column_std(const Matrix& rows) {
    const int n = rows.rows(), d = rows.cols();
    if (n < 1) throw std::invalid_argument("column_std: empty input");
    std::vector<double> mean(d, 0.0), var(d, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* x = rows.row(i);
        for (int k = 0; k < d; ++k) mean[k] += x[k];
    }
    for (int k = 0; k < d; ++k) mean[k] /= n;
    for (int i = 0; i < n; ++i) {
        const double* x = rows.row(i);
        for (int k = 0; k < d; ++k) {
            const double c = x[k] - mean[k];
            var[k] += c * c;
        }
    }
    std::vector<double> sd(d);
    for (int k = 0; k < d; ++k) sd[k] = std::sqrt(var[k] / n);
    return sd;
}

}  // namespace gg::nn
