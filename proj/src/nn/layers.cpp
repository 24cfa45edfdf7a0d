#include "nn/layers.hpp"

#include <cmath>
#include <stdexcept>

#include "core/kernels.hpp"

namespace gg::nn {

DenseParams DenseParams::init(int out, int in, Rng& rng) {
    DenseParams p;
    p.W = Matrix(out, in);
    p.b.assign(out, 0.0);
    const double bound = std::sqrt(6.0 / (in + out));
    for (std::size_t i = 0; i < p.W.size(); ++i) p.W.data()[i] = rng.uniform(-bound, bound);
    return p;
}

DenseParams DenseParams::identity(int n) {
    DenseParams p;
    p.W = Matrix(n, n);
    p.b.assign(n, 0.0);
    for (int i = 0; i < n; ++i) p.W(i, i) = 1.0;
    return p;
}

Matrix dense_forward(const DenseParams& p, const Matrix& x) {
    if (x.cols() != p.in())
        throw std::invalid_argument("dense_forward: input width " + std::to_string(x.cols()) + ", layer expects " +
                                    std::to_string(p.in()));
    Matrix y;
    kernels::matmul_nt(x, p.W, y);
    for (int i = 0; i < y.rows(); ++i) {
        double* row = y.row(i);
        for (int j = 0; j < y.cols(); ++j) row[j] += p.b[j];
    }
    return y;
}

void dense_backward(const DenseParams& p, const Matrix& x, const Matrix& dy, DenseGrads& grads, Matrix* dx) {
    if (dy.rows() != x.rows() || dy.cols() != p.out())
        throw std::invalid_argument("dense_backward: shape mismatch");
    kernels::matmul_tn(dy, x, grads.dW);  // out x in
    grads.db.assign(p.out(), 0.0);
    for (int i = 0; i < dy.rows(); ++i) {
        const double* row = dy.row(i);
        for (int j = 0; j < dy.cols(); ++j) grads.db[j] += row[j];
    }
    if (dx) kernels::matmul_nn(dy, p.W, *dx);
}

Matrix relu_forward(const Matrix& x) {
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) y.data()[i] = x.data()[i] > 0.0 ? x.data()[i] : 0.0;
    return y;
}

Matrix relu_backward(const Matrix& x, const Matrix& dy) {
    if (!x.same_shape(dy)) throw std::invalid_argument("relu_backward: shape mismatch");
    Matrix dx(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) dx.data()[i] = x.data()[i] > 0.0 ? dy.data()[i] : 0.0;
    return dx;
}

BatchNormState BatchNormState::init(int dims) {
    BatchNormState s;
    s.gamma.assign(dims, 1.0);
    s.beta.assign(dims, 0.0);
    s.running_mean.assign(dims, 0.0);
    s.running_var.assign(dims, 1.0);
    return s;
}

Matrix batchnorm_forward(BatchNormState& state, const Matrix& x, Mode mode, BatchNormCache* cache) {
    const int n = x.rows(), d = x.cols();
    if (d != state.dims()) throw std::invalid_argument("batchnorm_forward: width mismatch");
    if (mode == Mode::Train && n < 2)
        throw std::invalid_argument("batchnorm_forward: train mode needs a batch of at least 2");

    std::vector<double> mean(d, 0.0), var(d, 0.0);
    if (mode == Mode::Train) {
        for (int i = 0; i < n; ++i) {
            const double* row = x.row(i);
            for (int k = 0; k < d; ++k) mean[k] += row[k];
        }
        for (int k = 0; k < d; ++k) mean[k] /= n;
        for (int i = 0; i < n; ++i) {
            const double* row = x.row(i);
            for (int k = 0; k < d; ++k) {
                const double c = row[k] - mean[k];
                var[k] += c * c;
            }
        }
        for (int k = 0; k < d; ++k) var[k] /= n;
        for (int k = 0; k < d; ++k) {
            state.running_mean[k] = state.momentum * state.running_mean[k] + (1.0 - state.momentum) * mean[k];
            state.running_var[k] = state.momentum * state.running_var[k] + (1.0 - state.momentum) * var[k];
        }
    } else {
        mean = state.running_mean;
        var = state.running_var;
    }

    std::vector<double> inv_std(d);
    for (int k = 0; k < d; ++k) inv_std[k] = 1.0 / std::sqrt(var[k] + state.epsilon);

    Matrix y(n, d);
    Matrix xhat(n, d);
    for (int i = 0; i < n; ++i) {
        const double* row = x.row(i);
        double* h = xhat.row(i);
        double* o = y.row(i);
        for (int k = 0; k < d; ++k) {
            h[k] = (row[k] - mean[k]) * inv_std[k];
            o[k] = state.gamma[k] * h[k] + state.beta[k];
        }
    }
    if (cache) {
        cache->mode = mode;
        cache->xhat = std::move(xhat);
        cache->inv_std = std::move(inv_std);
    }
    return y;
}

Matrix batchnorm_backward(const BatchNormState& state, const BatchNormCache& cache, const Matrix& dy,
                          std::vector<double>& dgamma, std::vector<double>& dbeta) {
    const int n = dy.rows(), d = dy.cols();
    if (!dy.same_shape(cache.xhat)) throw std::invalid_argument("batchnorm_backward: shape mismatch");

    dgamma.assign(d, 0.0);
    dbeta.assign(d, 0.0);
    for (int i = 0; i < n; ++i) {
        const double* g = dy.row(i);
        const double* h = cache.xhat.row(i);
        for (int k = 0; k < d; ++k) {
            dgamma[k] += g[k] * h[k];
            dbeta[k] += g[k];
        }
    }

    Matrix dx(n, d);
    if (cache.mode == Mode::Infer) {
        // Running statistics are constants, so the map is affine in x.
        for (int i = 0; i < n; ++i) {
            const double* g = dy.row(i);
            double* o = dx.row(i);
            for (int k = 0; k < d; ++k) o[k] = g[k] * state.gamma[k] * cache.inv_std[k];
        }
        return dx;
    }
    // Train mode: the batch mean and variance depend on x.
    for (int i = 0; i < n; ++i) {
        const double* g = dy.row(i);
        const double* h = cache.xhat.row(i);
        double* o = dx.row(i);
        for (int k = 0; k < d; ++k) {
            const double dxhat = g[k] * state.gamma[k];
            o[k] = (dxhat - dbeta[k] * state.gamma[k] / n - h[k] * dgamma[k] * state.gamma[k] / n) * cache.inv_std[k];
        }
    }
    return dx;
}

Matrix dropout_forward(const Matrix& x, double p, Mode mode, Rng& rng, Matrix* mask) {
    if (p < 0.0 || p >= 1.0) throw std::invalid_argument("dropout_forward: p must be in [0, 1)");
    if (mode == Mode::Infer || p == 0.0) {
        if (mask) {
            *mask = Matrix(x.rows(), x.cols());
            mask->fill(1.0);
        }
        return x;
    }
    const double keep_scale = 1.0 / (1.0 - p);
    Matrix m(x.rows(), x.cols());
    Matrix y(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double keep = rng.uniform() >= p ? keep_scale : 0.0;
        m.data()[i] = keep;
        y.data()[i] = x.data()[i] * keep;
    }
    if (mask) *mask = std::move(m);
    return y;
}

Matrix dropout_backward(const Matrix& mask, const Matrix& dy) {
    if (!mask.same_shape(dy)) throw std::invalid_argument("dropout_backward: shape mismatch");
    Matrix dx(dy.rows(), dy.cols());
    for (std::size_t i = 0; i < dy.size(); ++i) dx.data()[i] = dy.data()[i] * mask.data()[i];
    return dx;
}

}  // namespace gg::nn
