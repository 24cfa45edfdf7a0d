#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/matrix.hpp"

namespace gg::nn {

struct TensorSpec {
    std::string name;
    int rows = 0;
    int cols = 0;
    const double* data = nullptr;

    std::size_t size() const { return static_cast<std::size_t>(rows) * cols; }
};

struct LoadedTensor {
    std::string name;
    int rows = 0;
    int cols = 0;
    std::vector<double> data;
};

struct LoadedCheckpoint {
    std::map<std::string, std::string> meta;
    std::vector<LoadedTensor> tensors;

    const LoadedTensor& tensor(const std::string& name) const;
    const std::string& meta_value(const std::string& key) const;
    bool has_meta(const std::string& key) const { return meta.count(key) != 0; }
};

// Checkpoint = text manifest at `path` plus a binary blob at `path`.bin.
// The manifest lists metadata as key=value lines and declares every tensor
// with its shape; the blob holds little-endian float64 values in
// manifest-declared order. Loading verifies the blob byte count exactly.
void save_checkpoint(const std::string& path, const std::map<std::string, std::string>& meta,
                     const std::vector<TensorSpec>& tensors);
LoadedCheckpoint load_checkpoint(const std::string& path);

std::string blob_path(const std::string& manifest_path);

}  // namespace gg::nn
