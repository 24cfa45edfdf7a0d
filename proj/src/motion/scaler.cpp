#include "motion/scaler.hpp"

#include <cmath>
#include <stdexcept>

namespace gg::motion {

ScalerParams ScalerParams::fit(const Matrix& rows) {
    if (rows.rows() < 1) throw std::invalid_argument("ScalerParams::fit: need at least one row");
    const int t = rows.rows(), d = rows.cols();
    ScalerParams p;
    p.mean.assign(d, 0.0);
    p.scale.assign(d, 0.0);
    for (int i = 0; i < t; ++i) {
        const double* x = rows.row(i);
        for (int k = 0; k < d; ++k) p.mean[k] += x[k];
    }
    for (int k = 0; k < d; ++k) p.mean[k] /= t;
    for (int i = 0; i < t; ++i) {
        const double* x = rows.row(i);
        for (int k = 0; k < d; ++k) p.scale[k] = std::max(p.scale[k], std::fabs(x[k] - p.mean[k]));
    }
    for (int k = 0; k < d; ++k)
        if (p.scale[k] <= 0.0) p.scale[k] = 1.0;  // constant dimensions carry no signal
    return p;
}

Matrix ScalerParams::apply(const Matrix& rows) const {
    if (rows.cols() != dims()) throw std::invalid_argument("ScalerParams::apply: width mismatch");
    Matrix out(rows.rows(), rows.cols());
    for (int i = 0; i < rows.rows(); ++i) {
        const double* x = rows.row(i);
        double* o = out.row(i);
        for (int k = 0; k < rows.cols(); ++k) o[k] = (x[k] - mean[k]) / scale[k];
    }
    return out;
}

Matrix ScalerParams::invert(const Matrix& rows) const {
    if (rows.cols() != dims()) throw std::invalid_argument("ScalerParams::invert: width mismatch");
    Matrix out(rows.rows(), rows.cols());
    for (int i = 0; i < rows.rows(); ++i) {
        const double* x = rows.row(i);
        double* o = out.row(i);
        for (int k = 0; k < rows.cols(); ++k) o[k] = x[k] * scale[k] + mean[k];
    }
    return out;
}

Matrix raw_motion_features(const MotionSequence& m) {
    if (m.joints != kMotionJoints)
        throw std::invalid_argument("raw_motion_features: expected " + std::to_string(kMotionJoints) + " joints, got " +
                                    std::to_string(m.joints));
    const Matrix vel = pose_velocity(m);
    const int t = m.frames(), d = m.positions.cols();
    Matrix out(t, 2 * d);
    for (int i = 0; i < t; ++i) {
        const double* p = m.positions.row(i);
        const double* v = vel.row(i);
        double* o = out.row(i);
        for (int k = 0; k < d; ++k) o[k] = p[k];
        for (int k = 0; k < d; ++k) o[d + k] = v[k];
    }
    return out;
}

MotionFeatureSequence assemble_motion_features(const MotionSequence& m, const ScalerParams& scaler) {
    if (scaler.dims() != kMotionFeatureDims)
        throw std::invalid_argument("assemble_motion_features: scaler width mismatch");
    MotionFeatureSequence fs;
    fs.data = scaler.apply(raw_motion_features(m));
    return fs;
}

}  // namespace gg::motion
