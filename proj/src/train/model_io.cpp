#include "train/model_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "core/textio.hpp"
#include "nn/checkpoint.hpp"

namespace gg::train {

namespace {

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream out;
    char buf[64];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", v[i]);
        if (i) out << ',';
        out << buf;
    }
    return out.str();
}

std::vector<double> split_doubles(const std::string& s, const std::string& context) {
    std::vector<double> v;
    for (const auto& tok : textio::split(s, ',')) v.push_back(textio::parse_double(tok, context));
    return v;
}

void append_param_tensors(std::vector<nn::TensorSpec>& specs, const std::vector<ParamRef>& refs,
                          const std::string& prefix) {
    for (const auto& r : refs)
        specs.push_back({prefix + r.name, 1, static_cast<int>(r.size), r.data});
}

void append_adam_tensors(std::vector<nn::TensorSpec>& specs, const nn::AdamState& adam,
                         const std::vector<ParamRef>& params) {
    if (!adam.initialized()) return;
    for (std::size_t i = 0; i < params.size(); ++i) {
        specs.push_back({"adam.m." + params[i].name, 1, static_cast<int>(adam.m[i].size()), adam.m[i].data()});
        specs.push_back({"adam.v." + params[i].name, 1, static_cast<int>(adam.v[i].size()), adam.v[i].data()});
    }
}

void load_params(const nn::LoadedCheckpoint& ck, const std::vector<ParamRef>& refs) {
    for (const auto& r : refs) {
        const auto& t = ck.tensor(r.name);
        if (t.data.size() != r.size)
            throw std::runtime_error("checkpoint tensor '" + r.name + "' has " + std::to_string(t.data.size()) +
                                     " values, model expects " + std::to_string(r.size));
        std::copy(t.data.begin(), t.data.end(), r.data);
    }
}

std::map<std::string, std::string> adam_meta(const nn::AdamState& adam) {
    char buf[64];
    std::map<std::string, std::string> m;
    m["adam.t"] = std::to_string(adam.t);
    std::snprintf(buf, sizeof(buf), "%.17g", adam.lr);
    m["adam.lr"] = buf;
    return m;
}

}  // namespace

std::string checkpoint_model_kind(const std::string& path) {
    for (const auto& line : textio::read_lines(path)) {
        const std::string t = textio::trim(line);
        if (t.rfind("model_kind=", 0) == 0) return t.substr(11);
    }
    throw std::runtime_error(path + ": checkpoint has no model_kind");
}

void save_dae_checkpoint(const std::string& path, model::MotionED& med, const motion::ScalerParams& scaler,
                         const nn::AdamState& adam, const std::map<std::string, std::string>& extra_meta) {
    std::map<std::string, std::string> meta = extra_meta;
    meta["model_kind"] = "motion_ed";
    meta["d_z"] = std::to_string(med.d_z());
    meta["width"] = std::to_string(med.width());
    meta["scaler.mean"] = join_doubles(scaler.mean);
    meta["scaler.scale"] = join_doubles(scaler.scale);
    for (const auto& [k, v] : adam_meta(adam)) meta[k] = v;

    std::vector<nn::TensorSpec> specs;
    specs.push_back({"enc.W", med.enc.W.rows(), med.enc.W.cols(), med.enc.W.data()});
    specs.push_back({"enc.b", 1, static_cast<int>(med.enc.b.size()), med.enc.b.data()});
    specs.push_back({"dec.W", med.dec.W.rows(), med.dec.W.cols(), med.dec.W.data()});
    specs.push_back({"dec.b", 1, static_cast<int>(med.dec.b.size()), med.dec.b.data()});
    append_adam_tensors(specs, adam, med.param_refs());
    nn::save_checkpoint(path, meta, specs);
}

DaeCheckpoint load_dae_checkpoint(const std::string& path) {
    const nn::LoadedCheckpoint ck = nn::load_checkpoint(path);
    if (ck.meta_value("model_kind") != "motion_ed")
        throw std::runtime_error(path + ": expected a motion_ed checkpoint, found " + ck.meta_value("model_kind"));
    const int d_z = static_cast<int>(textio::parse_long(ck.meta_value("d_z"), path));
    const int width = static_cast<int>(textio::parse_long(ck.meta_value("width"), path));

    DaeCheckpoint out;
    Rng rng(0);
    out.med = model::MotionED::init(d_z, width, rng);
    load_params(ck, out.med.param_refs());
    out.scaler.mean = split_doubles(ck.meta_value("scaler.mean"), path + " scaler.mean");
    out.scaler.scale = split_doubles(ck.meta_value("scaler.scale"), path + " scaler.scale");
    if (out.scaler.dims() != width) throw std::runtime_error(path + ": scaler width does not match the model");
    out.meta = ck.meta;
    return out;
}

void save_net_checkpoint(const std::string& path, model::SpeechNet& net, const motion::ScalerParams& scaler,
                         const nn::AdamState& adam, const std::map<std::string, std::string>& extra_meta) {
    std::map<std::string, std::string> meta = extra_meta;
    if (meta.count("model_kind") == 0)
        throw std::invalid_argument("save_net_checkpoint: extra_meta must set model_kind");
    meta["feature_kind"] = audio::kind_name(net.kind);
    meta["in_dim"] = std::to_string(net.in_dim());
    meta["out_dim"] = std::to_string(net.out_dim());
    meta["scaler.mean"] = join_doubles(scaler.mean);
    meta["scaler.scale"] = join_doubles(scaler.scale);
    for (const auto& [k, v] : adam_meta(adam)) meta[k] = v;

    std::vector<nn::TensorSpec> specs;
    specs.push_back({"fc1.W", net.fc1.W.rows(), net.fc1.W.cols(), net.fc1.W.data()});
    specs.push_back({"fc2.W", net.fc2.W.rows(), net.fc2.W.cols(), net.fc2.W.data()});
    specs.push_back({"fc3.W", net.fc3.W.rows(), net.fc3.W.cols(), net.fc3.W.data()});
    specs.push_back({"out.W", net.out.W.rows(), net.out.W.cols(), net.out.W.data()});
    specs.push_back({"gru.Wz", net.gru.Wz.rows(), net.gru.Wz.cols(), net.gru.Wz.data()});
    specs.push_back({"gru.Wr", net.gru.Wr.rows(), net.gru.Wr.cols(), net.gru.Wr.data()});
    specs.push_back({"gru.Wh", net.gru.Wh.rows(), net.gru.Wh.cols(), net.gru.Wh.data()});
    specs.push_back({"gru.Uz", net.gru.Uz.rows(), net.gru.Uz.cols(), net.gru.Uz.data()});
    specs.push_back({"gru.Ur", net.gru.Ur.rows(), net.gru.Ur.cols(), net.gru.Ur.data()});
    specs.push_back({"gru.Uh", net.gru.Uh.rows(), net.gru.Uh.cols(), net.gru.Uh.data()});
    append_param_tensors(specs, {param_ref("fc1.b", net.fc1.b), param_ref("fc2.b", net.fc2.b),
                                 param_ref("fc3.b", net.fc3.b), param_ref("out.b", net.out.b),
                                 param_ref("gru.bz", net.gru.bz), param_ref("gru.br", net.gru.br),
                                 param_ref("gru.bh", net.gru.bh)},
                         "");
    for (auto* bn : {&net.bn1, &net.bn2, &net.bn3, &net.bng}) {
        const std::string prefix = bn == &net.bn1   ? "bn1"
                                   : bn == &net.bn2 ? "bn2"
                                   : bn == &net.bn3 ? "bn3"
                                                    : "bng";
        append_param_tensors(specs,
                             {param_ref(prefix + ".gamma", bn->gamma), param_ref(prefix + ".beta", bn->beta),
                              param_ref(prefix + ".running_mean", bn->running_mean),
                              param_ref(prefix + ".running_var", bn->running_var)},
                             "");
    }
    append_adam_tensors(specs, adam, net.param_refs());
    nn::save_checkpoint(path, meta, specs);
}

NetCheckpoint load_net_checkpoint(const std::string& path) {
    const nn::LoadedCheckpoint ck = nn::load_checkpoint(path);
    const std::string model_kind = ck.meta_value("model_kind");
    if (model_kind != "speech_e" && model_kind != "baseline")
        throw std::runtime_error(path + ": expected a speech_e or baseline checkpoint, found " + model_kind);
    const int in_dim = static_cast<int>(textio::parse_long(ck.meta_value("in_dim"), path));
    const int out_dim = static_cast<int>(textio::parse_long(ck.meta_value("out_dim"), path));

    NetCheckpoint out;
    Rng rng(0);
    out.net = model::SpeechNet::init(in_dim, out_dim, audio::kind_from_name(ck.meta_value("feature_kind")), rng);
    load_params(ck, out.net.param_refs());
    load_params(ck, out.net.state_refs());
    out.scaler.mean = split_doubles(ck.meta_value("scaler.mean"), path + " scaler.mean");
    out.scaler.scale = split_doubles(ck.meta_value("scaler.scale"), path + " scaler.scale");
    out.meta = ck.meta;
    return out;
}

}  // namespace gg::train
