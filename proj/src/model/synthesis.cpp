#include "model/synthesis.hpp"

#include <stdexcept>

namespace gg::model {

namespace {

// Destandardized rows -> 20 fps motion positions (drops the velocity half).
motion::MotionSequence positions_from_features(const Matrix& raw) {
    const int t = raw.rows();
    const int pose_dims = 3 * motion::kMotionJoints;
    motion::MotionSequence m;
    m.fps = motion::kMotionFps;
    m.joints = motion::kMotionJoints;
    m.positions = Matrix(t, pose_dims);
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < pose_dims; ++k) m.positions(i, k) = raw(i, k);
    return m;
}

void check_kind(const SpeechNet& net, const audio::FeatureSequence& fs, const char* what) {
    if (fs.kind != net.kind)
        throw std::runtime_error(std::string(what) + ": model was trained on " + audio::kind_name(net.kind) +
                                 " features, got " + audio::kind_name(fs.kind));
}

}  // namespace

motion::MotionSequence synthesize(ChainedModel& chain, const audio::FeatureSequence& fs) {
    check_kind(chain.speech_e, fs, "synthesize");
    const ContextWindows windows = build_context_windows(fs);
    const int t = windows.frames();
    const Matrix pred = speechnet_forward(chain.speech_e, windows.flat, t, 1, nn::Mode::Infer, nullptr, nullptr);

    const int d_z = chain.d_z();
    if (pred.cols() != 2 * d_z)
        throw std::runtime_error("synthesize: SpeechE output width " + std::to_string(pred.cols()) +
                                 " does not match decoder bottleneck " + std::to_string(d_z));
    Matrix z(t, d_z);
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < d_z; ++k) z(i, k) = pred(i, k);

    const Matrix decoded = nn::dense_forward(chain.motion_d, z);
    return positions_from_features(chain.scaler.invert(decoded));
}

motion::MotionSequence synthesize_baseline(SpeechNet& net, const motion::ScalerParams& scaler,
                                           const audio::FeatureSequence& fs) {
    check_kind(net, fs, "synthesize_baseline");
    if (net.out_dim() != motion::kMotionFeatureDims)
        throw std::runtime_error("synthesize_baseline: expected a 384-wide output head");
    const ContextWindows windows = build_context_windows(fs);
    const int t = windows.frames();
    const Matrix pred = speechnet_forward(net, windows.flat, t, 1, nn::Mode::Infer, nullptr, nullptr);
    return positions_from_features(scaler.invert(pred));
}

}  // namespace gg::model
