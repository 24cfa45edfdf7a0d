#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace gg::motion {

enum class Channel { Xposition, Yposition, Zposition, Xrotation, Yrotation, Zrotation };

struct Joint {
    std::string name;
    int parent = -1;  // -1 for the root
    std::array<double, 3> offset{0.0, 0.0, 0.0};
    std::vector<Channel> channels;  // empty for End Sites
};

// Joints in depth-first document order; every parent index is smaller than
// its child's index.
struct Skeleton {
    std::vector<Joint> joints;

    int joint_count() const { return static_cast<int>(joints.size()); }
    int channel_count() const;
};

// Per-frame channel values in BVH units: degrees for rotations, length
// units for translations.
struct JointRotationSequence {
    Matrix frames;  // T x total channels
    double frame_time = 0.0;
};

// Parses a BVH 1.0 document (HIERARCHY then MOTION). Errors carry the
// 1-based line number they were detected on.
std::pair<Skeleton, JointRotationSequence> parse_bvh(const std::string& text);

std::pair<Skeleton, JointRotationSequence> load_bvh(const std::string& path);

// Plain-text skeleton table: "name parent ox oy oz" per line. The synthetic
// corpus stores its skeleton this way so evaluation can resolve joint
// groups by name.
void write_skeleton_txt(const std::string& path, const Skeleton& skel);
Skeleton read_skeleton_txt(const std::string& path);

}  // namespace gg::motion
