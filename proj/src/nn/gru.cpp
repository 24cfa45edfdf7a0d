#include "nn/gru.hpp"

#include <cmath>
#include <stdexcept>

#include "core/kernels.hpp"

namespace gg::nn {

namespace {

double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

Matrix rows_slice(const Matrix& m, int first, int count) {
    Matrix out(count, m.cols());
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = m(first + i, j);
    return out;
}

}  // namespace

GRUParams GRUParams::init(int hidden, int input, Rng& rng) {
    GRUParams p;
    auto mat = [&rng](int r, int c) {
        Matrix m(r, c);
        const double bound = std::sqrt(6.0 / (r + c));
        for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-bound, bound);
        return m;
    };
    p.Wz = mat(hidden, input);
    p.Wr = mat(hidden, input);
    p.Wh = mat(hidden, input);
    p.Uz = mat(hidden, hidden);
    p.Ur = mat(hidden, hidden);
    p.Uh = mat(hidden, hidden);
    p.bz.assign(hidden, 0.0);
    p.br.assign(hidden, 0.0);
    p.bh.assign(hidden, 0.0);
    return p;
}

Matrix gru_forward(const GRUParams& p, const Matrix& x_seq, int steps, int batch, const Matrix& h0,
                   GRUCache* cache) {
    const int hid = p.hidden();
    if (x_seq.cols() != p.input()) throw std::invalid_argument("gru_forward: input width mismatch");
    if (x_seq.rows() != steps * batch) throw std::invalid_argument("gru_forward: rows != steps*batch");

    Matrix h = h0.empty() ? Matrix(batch, hid) : h0;
    h.require_shape(batch, hid, "gru_forward h0");

    // Input projections for the whole sequence in one product per gate.
    Matrix xz, xr, xh;
    kernels::matmul_nt(x_seq, p.Wz, xz);
    kernels::matmul_nt(x_seq, p.Wr, xr);
    kernels::matmul_nt(x_seq, p.Wh, xh);

    // The recurrent products run once per step; transpose the U matrices
    // up front instead of inside every step.
    const Matrix UzT = kernels::transposed(p.Uz);
    const Matrix UrT = kernels::transposed(p.Ur);
    const Matrix UhT = kernels::transposed(p.Uh);

    Matrix out(steps * batch, hid);
    if (cache) {
        cache->steps = steps;
        cache->batch = batch;
        cache->x = x_seq;
        cache->z.assign(steps, Matrix());
        cache->r.assign(steps, Matrix());
        cache->hcand.assign(steps, Matrix());
        cache->h.assign(steps + 1, Matrix());
        cache->h[0] = h;
    }

    Matrix hz, hr, hh;
    for (int t = 0; t < steps; ++t) {
        const int base = t * batch;
        kernels::matmul_nn(h, UzT, hz);
        kernels::matmul_nn(h, UrT, hr);

        Matrix z(batch, hid), r(batch, hid);
        for (int b = 0; b < batch; ++b) {
            const double* pxz = xz.row(base + b);
            const double* pxr = xr.row(base + b);
            const double* phz = hz.row(b);
            const double* phr = hr.row(b);
            double* pz = z.row(b);
            double* pr = r.row(b);
            for (int k = 0; k < hid; ++k) {
                pz[k] = sigmoid(pxz[k] + phz[k] + p.bz[k]);
                pr[k] = sigmoid(pxr[k] + phr[k] + p.br[k]);
            }
        }

        Matrix rh(batch, hid);
        for (int b = 0; b < batch; ++b) {
            const double* ph = h.row(b);
            const double* pr = r.row(b);
            double* prh = rh.row(b);
            for (int k = 0; k < hid; ++k) prh[k] = pr[k] * ph[k];
        }
        kernels::matmul_nn(rh, UhT, hh);

        Matrix hcand(batch, hid), hnext(batch, hid);
        for (int b = 0; b < batch; ++b) {
            const double* pxh = xh.row(base + b);
            const double* phh = hh.row(b);
            const double* ph = h.row(b);
            const double* pz = z.row(b);
            double* pc = hcand.row(b);
            double* pn = hnext.row(b);
            double* po = out.row(base + b);
            for (int k = 0; k < hid; ++k) {
                pc[k] = std::tanh(pxh[k] + phh[k] + p.bh[k]);
                pn[k] = (1.0 - pz[k]) * ph[k] + pz[k] * pc[k];
                po[k] = pn[k];
            }
        }

        if (cache) {
            cache->z[t] = z;
            cache->r[t] = r;
            cache->hcand[t] = hcand;
            cache->h[t + 1] = hnext;
        }
        h = std::move(hnext);
    }
    return out;
}

void gru_backward(const GRUParams& p, const GRUCache& cache, const Matrix& dh_seq, GRUGrads& grads, Matrix* dx_seq) {
    const int steps = cache.steps, batch = cache.batch;
    const int hid = p.hidden(), in = p.input();
    if (dh_seq.rows() != steps * batch || dh_seq.cols() != hid)
        throw std::invalid_argument("gru_backward: dh shape mismatch");

    grads.dWz = Matrix(hid, in);
    grads.dWr = Matrix(hid, in);
    grads.dWh = Matrix(hid, in);
    grads.dUz = Matrix(hid, hid);
    grads.dUr = Matrix(hid, hid);
    grads.dUh = Matrix(hid, hid);
    grads.dbz.assign(hid, 0.0);
    grads.dbr.assign(hid, 0.0);
    grads.dbh.assign(hid, 0.0);
    if (dx_seq) *dx_seq = Matrix(steps * batch, in);

    Matrix dh(batch, hid);  // gradient flowing into h_{t+1}
    Matrix tmp;
    for (int t = steps - 1; t >= 0; --t) {
        const int base = t * batch;
        const Matrix& z = cache.z[t];
        const Matrix& r = cache.r[t];
        const Matrix& hcand = cache.hcand[t];
        const Matrix& hprev = cache.h[t];

        // Accumulate the loss gradient for this step's output.
        for (int b = 0; b < batch; ++b) {
            const double* g = dh_seq.row(base + b);
            double* d = dh.row(b);
            for (int k = 0; k < hid; ++k) d[k] += g[k];
        }

        Matrix da_z(batch, hid), da_r(batch, hid), da_h(batch, hid), dh_prev(batch, hid), drh(batch, hid);
        for (int b = 0; b < batch; ++b) {
            const double* d = dh.row(b);
            const double* pz = z.row(b);
            const double* pc = hcand.row(b);
            const double* ph = hprev.row(b);
            double* az = da_z.row(b);
            double* ah = da_h.row(b);
            double* dp = dh_prev.row(b);
            for (int k = 0; k < hid; ++k) {
                const double dz = d[k] * (pc[k] - ph[k]);
                const double dc = d[k] * pz[k];
                az[k] = dz * pz[k] * (1.0 - pz[k]);
                ah[k] = dc * (1.0 - pc[k] * pc[k]);
                dp[k] = d[k] * (1.0 - pz[k]);
            }
        }

        // d(r.*h) = da_h U_h ; split into dr and the h share.
        kernels::matmul_nn(da_h, p.Uh, drh);
        for (int b = 0; b < batch; ++b) {
            const double* prh = drh.row(b);
            const double* ph = hprev.row(b);
            const double* pr = r.row(b);
            double* ar = da_r.row(b);
            double* dp = dh_prev.row(b);
            for (int k = 0; k < hid; ++k) {
                const double dr = prh[k] * ph[k];
                ar[k] = dr * pr[k] * (1.0 - pr[k]);
                dp[k] += prh[k] * pr[k];
            }
        }

        const Matrix x_t = rows_slice(cache.x, base, batch);
        Matrix rh(batch, hid);
        for (int b = 0; b < batch; ++b) {
            const double* ph = hprev.row(b);
            const double* pr = r.row(b);
            double* prh = rh.row(b);
            for (int k = 0; k < hid; ++k) prh[k] = pr[k] * ph[k];
        }

        kernels::matmul_tn(da_z, x_t, grads.dWz, true);
        kernels::matmul_tn(da_r, x_t, grads.dWr, true);
        kernels::matmul_tn(da_h, x_t, grads.dWh, true);
        kernels::matmul_tn(da_z, hprev, grads.dUz, true);
        kernels::matmul_tn(da_r, hprev, grads.dUr, true);
        kernels::matmul_tn(da_h, rh, grads.dUh, true);
        for (int b = 0; b < batch; ++b) {
            const double* az = da_z.row(b);
            const double* ar = da_r.row(b);
            const double* ah = da_h.row(b);
            for (int k = 0; k < hid; ++k) {
                grads.dbz[k] += az[k];
                grads.dbr[k] += ar[k];
                grads.dbh[k] += ah[k];
            }
        }

        // Propagate into h_{t} through the z and r pre-activations.
        kernels::matmul_nn(da_z, p.Uz, tmp);
        for (int b = 0; b < batch; ++b) {
            const double* s = tmp.row(b);
            double* dp = dh_prev.row(b);
            for (int k = 0; k < hid; ++k) dp[k] += s[k];
        }
        kernels::matmul_nn(da_r, p.Ur, tmp);
        for (int b = 0; b < batch; ++b) {
            const double* s = tmp.row(b);
            double* dp = dh_prev.row(b);
            for (int k = 0; k < hid; ++k) dp[k] += s[k];
        }

        if (dx_seq) {
            Matrix dx_t;
            kernels::matmul_nn(da_z, p.Wz, dx_t);
            for (int b = 0; b < batch; ++b)
                for (int k = 0; k < in; ++k) (*dx_seq)(base + b, k) = dx_t(b, k);
            kernels::matmul_nn(da_r, p.Wr, dx_t);
            for (int b = 0; b < batch; ++b)
                for (int k = 0; k < in; ++k) (*dx_seq)(base + b, k) += dx_t(b, k);
            kernels::matmul_nn(da_h, p.Wh, dx_t);
            for (int b = 0; b < batch; ++b)
                for (int k = 0; k < in; ++k) (*dx_seq)(base + b, k) += dx_t(b, k);
        }

        dh = std::move(dh_prev);
    }
}

}  // namespace gg::nn
