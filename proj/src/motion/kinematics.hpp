#pragma once

#include <string>

#include "core/matrix.hpp"
#include "motion/bvh.hpp"

namespace gg::motion {

// Global 3D joint positions over time, one row per frame laid out as
// [j0_x, j0_y, j0_z, ..., j(n-1)_z].
struct MotionSequence {
    Matrix positions;  // T x 3n
    double fps = 0.0;
    int joints = 0;

    int frames() const { return positions.rows(); }
    const double* joint(int frame, int j) const { return positions.row(frame) + 3 * j; }
    double* joint(int frame, int j) { return positions.row(frame) + 3 * j; }
};

// Converts per-joint Euler channels to global joint positions. Rotations
// compose in each joint's declared channel order; root translation applies
// when channeled.
MotionSequence forward_kinematics(const Skeleton& skel, const JointRotationSequence& rot);

// Linear interpolation of positions at the target framerate. Only
// downsampling is supported; the source duration is preserved to within one
// frame.
MotionSequence resample(const MotionSequence& m, double target_fps = 20.0);

// Per-frame first differences (length units per frame). Frame 0 copies the
// first valid difference so the output keeps T rows.
Matrix pose_velocity(const MotionSequence& m);

// Motion CSV: "# fps=<fps> joints=<n>", then rows "frame,j0_x,...".
void write_motion_csv(const std::string& path, const MotionSequence& m, const std::string& config_note = "");
MotionSequence read_motion_csv(const std::string& path);

}  // namespace gg::motion
