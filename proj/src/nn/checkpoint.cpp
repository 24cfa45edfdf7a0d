#include "nn/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::nn {

static_assert(std::endian::native == std::endian::little,
              "checkpoint blobs are little-endian; add byte swapping for this platform");

const LoadedTensor& LoadedCheckpoint::tensor(const std::string& name) const {
    for (const auto& t : tensors)
        if (t.name == name) return t;
    throw std::runtime_error("checkpoint is missing tensor '" + name + "'");
}

const std::string& LoadedCheckpoint::meta_value(const std::string& key) const {
    auto it = meta.find(key);
    if (it == meta.end()) throw std::runtime_error("checkpoint is missing key '" + key + "'");
    return it->second;
}

std::string blob_path(const std::string& manifest_path) { return manifest_path + ".bin"; }

void save_checkpoint(const std::string& path, const std::map<std::string, std::string>& meta,
                     const std::vector<TensorSpec>& tensors) {
    std::ostringstream manifest;
    manifest << "format=gesturegen-checkpoint-v1\n";
    for (const auto& [key, value] : meta) {
        if (key == "format" || key.rfind("tensor.", 0) == 0 || key == "blob_bytes")
            throw std::invalid_argument("save_checkpoint: reserved meta key '" + key + "'");
        manifest << key << '=' << value << '\n';
    }
    std::size_t total = 0;
    for (std::size_t i = 0; i < tensors.size(); ++i) {
        const auto& t = tensors[i];
        manifest << "tensor." << i << '=' << t.name << ':' << t.rows << 'x' << t.cols << '\n';
        total += t.size();
    }
    manifest << "blob_bytes=" << total * sizeof(double) << '\n';

    std::string blob;
    blob.resize(total * sizeof(double));
    std::size_t off = 0;
    for (const auto& t : tensors) {
        std::memcpy(blob.data() + off, t.data, t.size() * sizeof(double));
        off += t.size() * sizeof(double);
    }

    textio::write_file_atomic(blob_path(path), blob);
    textio::write_file_atomic(path, manifest.str());
}

LoadedCheckpoint load_checkpoint(const std::string& path) {
    LoadedCheckpoint ck;
    std::vector<std::pair<int, std::string>> tensor_lines;  // index -> descriptor
    for (const auto& line : textio::read_lines(path)) {
        const std::string t = textio::trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw std::runtime_error(path + ": manifest line without '=': " + t);
        const std::string key = t.substr(0, eq), value = t.substr(eq + 1);
        if (key.rfind("tensor.", 0) == 0) {
            tensor_lines.emplace_back(static_cast<int>(textio::parse_long(key.substr(7), path)), value);
        } else {
            ck.meta[key] = value;
        }
    }
    if (ck.meta.count("format") == 0 || ck.meta["format"] != "gesturegen-checkpoint-v1")
        throw std::runtime_error(path + ": not a gesturegen checkpoint manifest");

    std::sort(tensor_lines.begin(), tensor_lines.end());
    std::size_t total = 0;
    for (const auto& [idx, desc] : tensor_lines) {
        const auto colon = desc.rfind(':');
        const auto x = desc.find('x', colon);
        if (colon == std::string::npos || x == std::string::npos)
            throw std::runtime_error(path + ": bad tensor descriptor '" + desc + "'");
        LoadedTensor t;
        t.name = desc.substr(0, colon);
        t.rows = static_cast<int>(textio::parse_long(desc.substr(colon + 1, x - colon - 1), path));
        t.cols = static_cast<int>(textio::parse_long(desc.substr(x + 1), path));
        if (t.rows < 0 || t.cols < 0) throw std::runtime_error(path + ": negative tensor shape");
        total += static_cast<std::size_t>(t.rows) * t.cols;
        ck.tensors.push_back(std::move(t));
    }

    const std::size_t declared_bytes = ck.meta.count("blob_bytes")
                                           ? static_cast<std::size_t>(textio::parse_long(ck.meta["blob_bytes"], path))
                                           : total * sizeof(double);
    if (declared_bytes != total * sizeof(double))
        throw std::runtime_error(path + ": blob_bytes disagrees with declared tensor shapes");

    std::ifstream blob(blob_path(path), std::ios::binary);
    if (!blob) throw std::runtime_error("cannot open " + blob_path(path));
    std::vector<char> bytes((std::istreambuf_iterator<char>(blob)), std::istreambuf_iterator<char>());
    if (bytes.size() != declared_bytes)
        throw std::runtime_error(blob_path(path) + ": expected " + std::to_string(declared_bytes) + " bytes, found " +
                                 std::to_string(bytes.size()));

    std::size_t off = 0;
    for (auto& t : ck.tensors) {
        const std::size_t n = static_cast<std::size_t>(t.rows) * t.cols;
        t.data.resize(n);
        std::memcpy(t.data.data(), bytes.data() + off, n * sizeof(double));
        off += n * sizeof(double);
    }
    return ck;
}

}  // namespace gg::nn
