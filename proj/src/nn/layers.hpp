#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace gg::nn {

enum class Mode { Train, Infer };

// Fully connected layer, y = x W^T + b. W is out x in.
struct DenseParams {
    Matrix W;
    std::vector<double> b;

    int in() const { return W.cols(); }
    int out() const { return W.rows(); }

    static DenseParams init(int out, int in, Rng& rng);
    static DenseParams identity(int n);
};

struct DenseGrads {
    Matrix dW;
    std::vector<double> db;
};

Matrix dense_forward(const DenseParams& p, const Matrix& x);
// dx is optional (skipped for the input layer of a stack).
void dense_backward(const DenseParams& p, const Matrix& x, const Matrix& dy, DenseGrads& grads, Matrix* dx);

Matrix relu_forward(const Matrix& x);
// Gradient gated by x > 0; the gradient at exactly 0 is 0.
Matrix relu_backward(const Matrix& x, const Matrix& dy);

struct BatchNormState {
    std::vector<double> gamma, beta;
    std::vector<double> running_mean, running_var;
    double momentum = 0.9;
    double epsilon = 1e-5;

    int dims() const { return static_cast<int>(gamma.size()); }
    static BatchNormState init(int dims);
};

struct BatchNormCache {
    Mode mode = Mode::Train;
    Matrix xhat;
    std::vector<double> inv_std;  // per feature, from batch stats (train) or running stats (infer)
};

// Train mode normalizes by batch statistics (batch >= 2 required) and
// updates the running estimates; infer mode applies the running statistics
// as a fixed affine map.
Matrix batchnorm_forward(BatchNormState& state, const Matrix& x, Mode mode, BatchNormCache* cache);
Matrix batchnorm_backward(const BatchNormState& state, const BatchNormCache& cache, const Matrix& dy,
                          std::vector<double>& dgamma, std::vector<double>& dbeta);

// Inverted dropout: zeros with probability p and scales survivors by
// 1/(1-p), so inference is the identity.
Matrix dropout_forward(const Matrix& x, double p, Mode mode, Rng& rng, Matrix* mask);
Matrix dropout_backward(const Matrix& mask, const Matrix& dy);

}  // namespace gg::nn
