#include "train/config.hpp"

#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"

namespace gg::train {

void TrainConfig::validate() const {
    if (lr <= 0.0) throw std::runtime_error("config: lr must be positive");
    if (batch_size < 1) throw std::runtime_error("config: batch_size must be positive");
    if (epochs < 1) throw std::runtime_error("config: epochs must be positive");
    if (d_z < 1) throw std::runtime_error("config: d_z must be positive");
    if (noise_scale < 0.0) throw std::runtime_error("config: noise_scale must be non-negative");
    if (bptt_len < 2) throw std::runtime_error("config: bptt_len must be at least 2");
}

TrainConfig load_config_file(const std::string& path, const TrainConfig& base) {
    TrainConfig cfg = base;
    const auto kv = textio::parse_kv_lines(textio::read_lines(path), path);
    for (const auto& [key, value] : kv) {
        if (key == "lr") cfg.lr = textio::parse_double(value, path + " lr");
        else if (key == "batch_size") cfg.batch_size = static_cast<int>(textio::parse_long(value, path));
        else if (key == "epochs") cfg.epochs = static_cast<int>(textio::parse_long(value, path));
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(textio::parse_long(value, path));
        else if (key == "d_z") cfg.d_z = static_cast<int>(textio::parse_long(value, path));
        else if (key == "kind") cfg.kind = audio::kind_from_name(value);
        else if (key == "noise_scale") cfg.noise_scale = textio::parse_double(value, path + " noise_scale");
        else if (key == "bptt_len") cfg.bptt_len = static_cast<int>(textio::parse_long(value, path));
        else throw std::runtime_error(path + ": unknown config key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

std::string config_echo(const TrainConfig& cfg) {
    std::ostringstream out;
    out << "lr=" << textio::format_double(cfg.lr) << " batch_size=" << cfg.batch_size << " epochs=" << cfg.epochs
        << " seed=" << cfg.seed << " d_z=" << cfg.d_z << " kind=" << audio::kind_name(cfg.kind)
        << " noise_scale=" << textio::format_double(cfg.noise_scale) << " bptt_len=" << cfg.bptt_len;
    return out.str();
}

}  // namespace gg::train
