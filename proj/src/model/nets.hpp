#pragma once

#include <vector>

#include "audio/features.hpp"
#include "core/matrix.hpp"
#include "core/rng.hpp"
#include "nn/gru.hpp"
#include "nn/layers.hpp"

namespace gg::model {

constexpr int kHiddenWidth = 256;

// Motion denoising autoencoder: one affine encoder to the d_z bottleneck
// and one affine decoder back to the 384-dim motion features.
struct MotionED {
    nn::DenseParams enc;  // d_z x 384
    nn::DenseParams dec;  // 384 x d_z

    int d_z() const { return enc.out(); }
    int width() const { return enc.in(); }

    static MotionED init(int d_z, int width, Rng& rng);

    std::vector<ParamRef> param_refs();
};

struct MotionEDGrads {
    nn::DenseGrads enc, dec;
    std::vector<ParamRef> refs();
};

struct DaeForward {
    Matrix z;
    Matrix recon;
};

// Affine encode/decode of the given rows (noise, when wanted, is added by
// the caller before this).
DaeForward dae_forward(const MotionED& med, const Matrix& input);
void dae_backward(const MotionED& med, const Matrix& input, const DaeForward& fwd, const Matrix& drecon,
                  MotionEDGrads& grads);

// Clean per-frame representations (no noise): z = enc(features).
Matrix encode_motion(const MotionED& med, const Matrix& features);
Matrix decode_motion(const MotionED& med, const Matrix& z);

// Speech-to-output network shared by SpeechE and the baseline; they differ
// only in output width (2*d_z vs 384) and training targets. Stack:
// [FC -> BN -> ReLU -> Dropout] x3 -> GRU -> BN -> Dropout -> FC.
struct SpeechNet {
    audio::FeatureKind kind = audio::FeatureKind::Mfcc;
    nn::DenseParams fc1, fc2, fc3, out;
    nn::BatchNormState bn1, bn2, bn3, bng;
    nn::GRUParams gru;

    int in_dim() const { return fc1.in(); }
    int out_dim() const { return out.out(); }

    static SpeechNet init(int in_dim, int out_dim, audio::FeatureKind kind, Rng& rng);

    std::vector<ParamRef> param_refs();
    // Running BN statistics: saved in checkpoints but not optimized.
    std::vector<ParamRef> state_refs();
};

struct SpeechNetGrads {
    nn::DenseGrads fc1, fc2, fc3, out;
    std::vector<double> dg1, db1, dg2, db2, dg3, db3, dgg, dbg;
    nn::GRUGrads gru;
    std::vector<ParamRef> refs();
};

struct SpeechNetCache {
    int steps = 0, batch = 0;
    Matrix x;
    Matrix a1, n1, h1;  // fc1 out, bn out (relu input), dropout out
    Matrix a2, n2, h2;
    Matrix a3, n3, h3;
    Matrix g;            // gru output
    Matrix ng, hg;       // bn+dropout after the gru
    nn::BatchNormCache bc1, bc2, bc3, bcg;
    Matrix mask1, mask2, mask3, maskg;
    nn::GRUCache gru_cache;
};

// x is (steps*batch) x in_dim, time-major (row t*batch + b). The FC stack
// treats every row independently; the GRU runs over the step axis.
Matrix speechnet_forward(SpeechNet& net, const Matrix& x, int steps, int batch, nn::Mode mode, Rng* dropout_rng,
                         SpeechNetCache* cache, double dropout_p = 0.1);
void speechnet_backward(SpeechNet& net, const SpeechNetCache& cache, const Matrix& dout, SpeechNetGrads& grads);

}  // namespace gg::model
