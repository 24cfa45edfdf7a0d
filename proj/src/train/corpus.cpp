#include "train/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <stdexcept>

#include "audio/wav.hpp"
#include "core/rng.hpp"
#include "core/textio.hpp"

namespace fs = std::filesystem;

namespace gg::train {

namespace {

void truncate_motion(motion::MotionSequence& m, int t) {
    if (m.frames() == t) return;
    Matrix p(t, m.positions.cols());
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < m.positions.cols(); ++k) p(i, k) = m.positions(i, k);
    m.positions = std::move(p);
}

void truncate_features(audio::FeatureSequence& f, int t) {
    if (f.frames() == t) return;
    Matrix d(t, f.dims());
    for (int i = 0; i < t; ++i)
        for (int k = 0; k < f.dims(); ++k) d(i, k) = f.data(i, k);
    f.data = std::move(d);
}

}  // namespace

Corpus load_corpus(const std::string& dir, std::optional<audio::FeatureKind> kind) {
    const std::string split_path = dir + "/split.txt";
    if (!textio::file_exists(split_path)) throw std::runtime_error("corpus has no split manifest: " + split_path);

    Corpus corpus;
    std::set<std::string> seen;
    int lineno = 0;
    for (const auto& line : textio::read_lines(split_path)) {
        ++lineno;
        const std::string t = textio::trim(line);
        if (t.empty() || t[0] == '#') continue;
        std::istringstream ss(t);
        std::string id, part;
        ss >> id >> part;
        if (id.empty() || part.empty())
            throw std::runtime_error(split_path + ":" + std::to_string(lineno) + ": expected '<id> <split>'");
        if (!seen.insert(id).second)
            throw std::runtime_error(split_path + ":" + std::to_string(lineno) + ": duplicate utterance id " + id);

        Utterance utt;
        utt.id = id;
        utt.motion = motion::read_motion_csv(dir + "/motion/" + id + ".csv");
        if (kind) {
            const audio::AudioBuffer buf = audio::load_wav(dir + "/audio/" + id + ".wav");
            utt.features = audio::extract_at_20fps(buf, *kind);
            const int t = std::min(utt.features.frames(), utt.motion.frames());
            if (t < 2) throw std::runtime_error("utterance " + id + " has fewer than 2 aligned frames");
            truncate_features(utt.features, t);
            truncate_motion(utt.motion, t);
        }

        const int idx = static_cast<int>(corpus.utterances.size());
        if (part == "train") corpus.train_set.push_back(idx);
        else if (part == "val") corpus.val_set.push_back(idx);
        else if (part == "test") corpus.test_set.push_back(idx);
        else throw std::runtime_error(split_path + ":" + std::to_string(lineno) + ": unknown split '" + part + "'");
        corpus.utterances.push_back(std::move(utt));
    }
    if (corpus.utterances.empty()) throw std::runtime_error(dir + ": empty corpus");

    const std::string skel_path = dir + "/skeleton.txt";
    if (textio::file_exists(skel_path)) corpus.skeleton = motion::read_skeleton_txt(skel_path);
    return corpus;
}

void split_corpus(Corpus& corpus, int n_train, int n_val, int n_test, std::uint64_t seed) {
    const int n = static_cast<int>(corpus.utterances.size());
    if (n_train < 0 || n_val < 0 || n_test < 0 || n_train + n_val + n_test > n)
        throw std::runtime_error("split_corpus: split counts exceed " + std::to_string(n) + " utterances");
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    Rng rng(seed);
    rng.shuffle(order);
    corpus.train_set.assign(order.begin(), order.begin() + n_train);
    corpus.val_set.assign(order.begin() + n_train, order.begin() + n_train + n_val);
    corpus.test_set.assign(order.begin() + n_train + n_val, order.begin() + n_train + n_val + n_test);
}

void write_split_file(const std::string& path, const Corpus& corpus) {
    std::ostringstream out;
    out << "# utterance split\n";
    auto emit = [&](const std::vector<int>& ids, const char* name) {
        for (int i : ids) out << corpus.utterances[i].id << ' ' << name << '\n';
    };
    emit(corpus.train_set, "train");
    emit(corpus.val_set, "val");
    emit(corpus.test_set, "test");
    textio::write_file_atomic(path, out.str());
}

}  // namespace gg::train
