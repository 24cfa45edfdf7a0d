#include "model/nets.hpp"

#include <stdexcept>

namespace gg::model {

MotionED MotionED::init(int d_z, int width, Rng& rng) {
    if (d_z < 1) throw std::invalid_argument("MotionED: d_z must be positive");
    MotionED med;
    med.enc = nn::DenseParams::init(d_z, width, rng);
    med.dec = nn::DenseParams::init(width, d_z, rng);
    return med;
}

std::vector<ParamRef> MotionED::param_refs() {
    return {
        param_ref("enc.W", enc.W), param_ref("enc.b", enc.b),
        param_ref("dec.W", dec.W), param_ref("dec.b", dec.b),
    };
}

std::vector<ParamRef> MotionEDGrads::refs() {
    return {
        param_ref("enc.W", enc.dW), param_ref("enc.b", enc.db),
        param_ref("dec.W", dec.dW), param_ref("dec.b", dec.db),
    };
}

DaeForward dae_forward(const MotionED& med, const Matrix& input) {
    if (input.cols() != med.width())
        throw std::invalid_argument("dae_forward: input width " + std::to_string(input.cols()) + ", expected " +
                                    std::to_string(med.width()));
    DaeForward f;
    f.z = nn::dense_forward(med.enc, input);
    f.recon = nn::dense_forward(med.dec, f.z);
    return f;
}

void dae_backward(const MotionED& med, const Matrix& input, const DaeForward& fwd, const Matrix& drecon,
                  MotionEDGrads& grads) {
    Matrix dz;
    nn::dense_backward(med.dec, fwd.z, drecon, grads.dec, &dz);
    nn::dense_backward(med.enc, input, dz, grads.enc, nullptr);
}

Matrix encode_motion(const MotionED& med, const Matrix& features) { return nn::dense_forward(med.enc, features); }

Matrix decode_motion(const MotionED& med, const Matrix& z) { return nn::dense_forward(med.dec, z); }

SpeechNet SpeechNet::init(int in_dim, int out_dim, audio::FeatureKind kind, Rng& rng) {
    SpeechNet net;
    net.kind = kind;
    net.fc1 = nn::DenseParams::init(kHiddenWidth, in_dim, rng);
    net.fc2 = nn::DenseParams::init(kHiddenWidth, kHiddenWidth, rng);
    net.fc3 = nn::DenseParams::init(kHiddenWidth, kHiddenWidth, rng);
    net.gru = nn::GRUParams::init(kHiddenWidth, kHiddenWidth, rng);
    net.out = nn::DenseParams::init(out_dim, kHiddenWidth, rng);
    net.bn1 = nn::BatchNormState::init(kHiddenWidth);
    net.bn2 = nn::BatchNormState::init(kHiddenWidth);
    net.bn3 = nn::BatchNormState::init(kHiddenWidth);
    net.bng = nn::BatchNormState::init(kHiddenWidth);
    return net;
}

std::vector<ParamRef> SpeechNet::param_refs() {
    return {
        param_ref("fc1.W", fc1.W), param_ref("fc1.b", fc1.b),
        param_ref("bn1.gamma", bn1.gamma), param_ref("bn1.beta", bn1.beta),
        param_ref("fc2.W", fc2.W), param_ref("fc2.b", fc2.b),
        param_ref("bn2.gamma", bn2.gamma), param_ref("bn2.beta", bn2.beta),
        param_ref("fc3.W", fc3.W), param_ref("fc3.b", fc3.b),
        param_ref("bn3.gamma", bn3.gamma), param_ref("bn3.beta", bn3.beta),
        param_ref("gru.Wz", gru.Wz), param_ref("gru.Wr", gru.Wr), param_ref("gru.Wh", gru.Wh),
        param_ref("gru.Uz", gru.Uz), param_ref("gru.Ur", gru.Ur), param_ref("gru.Uh", gru.Uh),
        param_ref("gru.bz", gru.bz), param_ref("gru.br", gru.br), param_ref("gru.bh", gru.bh),
        param_ref("bng.gamma", bng.gamma), param_ref("bng.beta", bng.beta),
        param_ref("out.W", out.W), param_ref("out.b", out.b),
    };
}

std::vector<ParamRef> SpeechNet::state_refs() {
    return {
        param_ref("bn1.running_mean", bn1.running_mean), param_ref("bn1.running_var", bn1.running_var),
        param_ref("bn2.running_mean", bn2.running_mean), param_ref("bn2.running_var", bn2.running_var),
        param_ref("bn3.running_mean", bn3.running_mean), param_ref("bn3.running_var", bn3.running_var),
        param_ref("bng.running_mean", bng.running_mean), param_ref("bng.running_var", bng.running_var),
    };
}

std::vector<ParamRef> SpeechNetGrads::refs() {
    return {
        param_ref("fc1.W", fc1.dW), param_ref("fc1.b", fc1.db),
        param_ref("bn1.gamma", dg1), param_ref("bn1.beta", db1),
        param_ref("fc2.W", fc2.dW), param_ref("fc2.b", fc2.db),
        param_ref("bn2.gamma", dg2), param_ref("bn2.beta", db2),
        param_ref("fc3.W", fc3.dW), param_ref("fc3.b", fc3.db),
        param_ref("bn3.gamma", dg3), param_ref("bn3.beta", db3),
        param_ref("gru.Wz", gru.dWz), param_ref("gru.Wr", gru.dWr), param_ref("gru.Wh", gru.dWh),
        param_ref("gru.Uz", gru.dUz), param_ref("gru.Ur", gru.dUr), param_ref("gru.Uh", gru.dUh),
        param_ref("gru.bz", gru.dbz), param_ref("gru.br", gru.dbr), param_ref("gru.bh", gru.dbh),
        param_ref("bng.gamma", dgg), param_ref("bng.beta", dbg),
        param_ref("out.W", out.dW), param_ref("out.b", out.db),
    };
}

Matrix speechnet_forward(SpeechNet& net, const Matrix& x, int steps, int batch, nn::Mode mode, Rng* dropout_rng,
                         SpeechNetCache* cache, double dropout_p) {
    if (x.rows() != steps * batch) throw std::invalid_argument("speechnet_forward: rows != steps*batch");
    if (x.cols() != net.in_dim())
        throw std::invalid_argument("speechnet_forward: input width " + std::to_string(x.cols()) + ", net expects " +
                                    std::to_string(net.in_dim()));
    if (mode == nn::Mode::Train && dropout_rng == nullptr)
        throw std::invalid_argument("speechnet_forward: train mode needs an rng for dropout");

    Rng unused(0);
    Rng& rng = dropout_rng ? *dropout_rng : unused;
    const double p = mode == nn::Mode::Train ? dropout_p : 0.0;

    SpeechNetCache local;
    SpeechNetCache& c = cache ? *cache : local;
    c.steps = steps;
    c.batch = batch;
    c.x = x;

    c.a1 = nn::dense_forward(net.fc1, x);
    c.n1 = nn::batchnorm_forward(net.bn1, c.a1, mode, &c.bc1);
    c.h1 = nn::dropout_forward(nn::relu_forward(c.n1), p, mode, rng, &c.mask1);

    c.a2 = nn::dense_forward(net.fc2, c.h1);
    c.n2 = nn::batchnorm_forward(net.bn2, c.a2, mode, &c.bc2);
    c.h2 = nn::dropout_forward(nn::relu_forward(c.n2), p, mode, rng, &c.mask2);

    c.a3 = nn::dense_forward(net.fc3, c.h2);
    c.n3 = nn::batchnorm_forward(net.bn3, c.a3, mode, &c.bc3);
    c.h3 = nn::dropout_forward(nn::relu_forward(c.n3), p, mode, rng, &c.mask3);

    c.g = nn::gru_forward(net.gru, c.h3, steps, batch, Matrix(), &c.gru_cache);
    c.ng = nn::batchnorm_forward(net.bng, c.g, mode, &c.bcg);
    c.hg = nn::dropout_forward(c.ng, p, mode, rng, &c.maskg);

    return nn::dense_forward(net.out, c.hg);
}

void speechnet_backward(SpeechNet& net, const SpeechNetCache& cache, const Matrix& dout, SpeechNetGrads& grads) {
    Matrix dhg;
    nn::dense_backward(net.out, cache.hg, dout, grads.out, &dhg);
    Matrix dng = nn::dropout_backward(cache.maskg, dhg);
    Matrix dg = nn::batchnorm_backward(net.bng, cache.bcg, dng, grads.dgg, grads.dbg);

    Matrix dh3;
    nn::gru_backward(net.gru, cache.gru_cache, dg, grads.gru, &dh3);

    Matrix dn3 = nn::relu_backward(cache.n3, nn::dropout_backward(cache.mask3, dh3));
    Matrix da3 = nn::batchnorm_backward(net.bn3, cache.bc3, dn3, grads.dg3, grads.db3);
    Matrix dh2;
    nn::dense_backward(net.fc3, cache.h2, da3, grads.fc3, &dh2);

    Matrix dn2 = nn::relu_backward(cache.n2, nn::dropout_backward(cache.mask2, dh2));
    Matrix da2 = nn::batchnorm_backward(net.bn2, cache.bc2, dn2, grads.dg2, grads.db2);
    Matrix dh1;
    nn::dense_backward(net.fc2, cache.h1, da2, grads.fc2, &dh1);

    Matrix dn1 = nn::relu_backward(cache.n1, nn::dropout_backward(cache.mask1, dh1));
    Matrix da1 = nn::batchnorm_backward(net.bn1, cache.bc1, dn1, grads.dg1, grads.db1);
    nn::dense_backward(net.fc1, cache.x, da1, grads.fc1, nullptr);
}

}  // namespace gg::model
