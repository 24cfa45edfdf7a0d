#pragma once

#include <optional>
#include <string>
#include <vector>

#include "audio/features.hpp"
#include "motion/bvh.hpp"
#include "motion/kinematics.hpp"

namespace gg::train {

struct Utterance {
    std::string id;
    audio::FeatureSequence features;  // chosen kind at 20 fps; empty when loaded without a kind
    motion::MotionSequence motion;    // 20 fps ground truth
};

// Paired speech/motion corpus with a train/validation/test split. Indices
// refer into `utterances`.
struct Corpus {
    std::vector<Utterance> utterances;
    std::vector<int> train_set, val_set, test_set;
    motion::Skeleton skeleton;  // may be empty when no skeleton.txt is present

    const Utterance& at(int idx) const { return utterances[idx]; }
};

// Directory layout: audio/<id>.wav, motion/<id>.csv, split.txt, and
// optionally skeleton.txt. When `kind` is set, features are extracted at
// 20 fps and each utterance is aligned by truncating features and motion
// to the shorter of the two.
Corpus load_corpus(const std::string& dir, std::optional<audio::FeatureKind> kind);

// Deterministic shuffle by seed, then partition into the given counts.
void split_corpus(Corpus& corpus, int n_train, int n_val, int n_test, std::uint64_t seed);

void write_split_file(const std::string& path, const Corpus& corpus);

}  // namespace gg::train
