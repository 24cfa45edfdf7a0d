#pragma once

#include <vector>

#include "core/matrix.hpp"
#include "motion/kinematics.hpp"

namespace gg::motion {

// Standardization to mean zero and maximum absolute value one, fitted per
// dimension. Dimensions with no spread get scale 1 so application stays
// invertible.
struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> scale;

    int dims() const { return static_cast<int>(mean.size()); }

    static ScalerParams fit(const Matrix& rows);
    Matrix apply(const Matrix& rows) const;
    Matrix invert(const Matrix& rows) const;
};

// Standardized [positions | first differences] rows, width 384 for the
// 64-joint skeleton.
struct MotionFeatureSequence {
    Matrix data;  // T x 384

    int frames() const { return data.rows(); }
};

constexpr int kMotionJoints = 64;
constexpr int kMotionFps = 20;
constexpr int kMotionFeatureDims = 2 * 3 * kMotionJoints;  // 384

// Raw (unstandardized) pose+velocity rows for fitting the scaler.
Matrix raw_motion_features(const MotionSequence& m);

MotionFeatureSequence assemble_motion_features(const MotionSequence& m, const ScalerParams& scaler);

}  // namespace gg::motion
