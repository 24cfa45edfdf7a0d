#pragma once

#include <string>
#include <vector>

#include "core/matrix.hpp"
#include "motion/bvh.hpp"
#include "motion/kinematics.hpp"

namespace gg::eval {

// Average position error: mean over frames and joints of the per-joint
// Euclidean distance between prediction and reference.
double ape(const motion::MotionSequence& truth, const motion::MotionSequence& pred);

// Per-joint magnitudes of repeated forward differences: order 2 gives
// acceleration, order 3 jerk, in length units per frame^order. Output has
// T - order rows and one column per joint.
Matrix derivative_magnitudes(const motion::MotionSequence& m, int order);

// Mean of derivative_magnitudes over all frames and the selected joints
// (all joints when the list is empty).
double avg_stat(const motion::MotionSequence& m, int order, const std::vector<int>& joints = {});

struct JointGroup {
    std::string name;          // all | hands | shoulders
    std::vector<int> indices;  // empty means every joint
};

// Resolves a named group against skeleton joint names using '|'-separated
// case-insensitive substring patterns.
JointGroup resolve_group(const motion::Skeleton& skel, const std::string& group_name,
                         const std::string& hands_pattern = "hand|thumb|index|middle|ring|pinky",
                         const std::string& shoulders_pattern = "shoulder|clavicle");

struct Histogram {
    double bin_width = 0.0;
    std::vector<double> left_edges;
    std::vector<double> rel_freq;
    std::size_t sample_count = 0;
};

// Pools per-joint acceleration magnitudes over all sequences and the group
// joints into equal-width bins [k*w, (k+1)*w); frequencies are relative.
Histogram acceleration_histogram(const std::vector<const motion::MotionSequence*>& sequences,
                                 const JointGroup& group, double bin_width);

double mean(const std::vector<double>& v);
double sample_sd(const std::vector<double>& v);
double median(std::vector<double> v);

}  // namespace gg::eval
