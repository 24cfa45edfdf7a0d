#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "core/rng.hpp"

namespace gg::nn {

// Gated recurrent unit:
//   z = sigmoid(x W_z^T + h U_z^T + b_z)
//   r = sigmoid(x W_r^T + h U_r^T + b_r)
//   hcand = tanh(x W_h^T + (r .* h) U_h^T + b_h)
//   h' = (1 - z) .* h + z .* hcand
struct GRUParams {
    Matrix Wz, Wr, Wh;  // hidden x input
    Matrix Uz, Ur, Uh;  // hidden x hidden
    std::vector<double> bz, br, bh;

    int input() const { return Wz.cols(); }
    int hidden() const { return Wz.rows(); }

    static GRUParams init(int hidden, int input, Rng& rng);
};

struct GRUGrads {
    Matrix dWz, dWr, dWh, dUz, dUr, dUh;
    std::vector<double> dbz, dbr, dbh;
};

// Sequences are time-major: row t*batch + b holds step t of chunk b.
struct GRUCache {
    int steps = 0;
    int batch = 0;
    Matrix x;  // copy of the input sequence
    std::vector<Matrix> z, r, hcand;
    std::vector<Matrix> h;  // h[0] = h0, h[t+1] = state after step t
};

// Returns the hidden sequence, (T*B) x hidden. h0 may be empty (zeros).
Matrix gru_forward(const GRUParams& p, const Matrix& x_seq, int steps, int batch, const Matrix& h0,
                   GRUCache* cache);

// Backprop through time over the cached run. dh_seq matches the forward
// output; dx_seq is optional.
void gru_backward(const GRUParams& p, const GRUCache& cache, const Matrix& dh_seq, GRUGrads& grads, Matrix* dx_seq);

}  // namespace gg::nn
