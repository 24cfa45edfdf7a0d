#include "train/sweep.hpp"

#include <atomic>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "core/textio.hpp"
#include "eval/metrics.hpp"
#include "train/trainer.hpp"

namespace gg::train {

SweepResult sweep_dz(const Corpus& corpus, const TrainConfig& base, const std::vector<int>& dims, int runs,
                     int jobs) {
    if (dims.empty()) throw std::runtime_error("sweep_dz: no dimensions given");
    if (runs < 1) throw std::runtime_error("sweep_dz: runs must be positive");
    if (corpus.test_set.empty()) throw std::runtime_error("sweep_dz: corpus has no test split");

    SweepResult result;
    result.runs.resize(dims.size() * static_cast<std::size_t>(runs));

    auto run_one = [&](std::size_t flat) {
        const int dim = dims[flat / runs];
        const int run = static_cast<int>(flat % runs);
        TrainConfig cfg = base;
        cfg.d_z = dim;
        cfg.seed = base.seed + static_cast<std::uint64_t>(run);

        DaeTrainResult dae = train_dae(corpus, cfg);
        NetTrainResult net = train_net(NetKind::SpeechE, corpus, cfg, &dae.model, &dae.scaler);

        model::ChainedModel chain{std::move(net.net), dae.model.dec, dae.scaler};
        const SplitEval eval = evaluate_chain_on_split(corpus, corpus.test_set, chain);
        result.runs[flat] = {dim, run, cfg.seed, eval.ape, eval.jerk};
    };

    const std::size_t total = result.runs.size();
    if (jobs <= 1) {
        for (std::size_t i = 0; i < total; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t i = next.fetch_add(1); i < total; i = next.fetch_add(1)) run_one(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    for (std::size_t d = 0; d < dims.size(); ++d) {
        std::vector<double> apes, jerks;
        for (int r = 0; r < runs; ++r) {
            apes.push_back(result.runs[d * runs + r].ape);
            jerks.push_back(result.runs[d * runs + r].jerk);
        }
        result.rows.push_back({dims[d], eval::mean(apes), eval::sample_sd(apes), eval::mean(jerks),
                               eval::sample_sd(jerks)});
    }
    return result;
}

void write_sweep_csv(const std::string& path, const SweepResult& result, const std::string& config_note) {
    std::ostringstream out;
    if (!config_note.empty()) out << "# " << config_note << "\n";
    out << "d_z,ape_mean,ape_sd,jerk_mean,jerk_sd\n";
    for (const auto& r : result.rows)
        out << r.d_z << ',' << textio::format_double(r.ape_mean) << ',' << textio::format_double(r.ape_sd) << ','
            << textio::format_double(r.jerk_mean) << ',' << textio::format_double(r.jerk_sd) << '\n';
    textio::write_file_atomic(path, out.str());
}

void write_sweep_runs_csv(const std::string& path, const SweepResult& result) {
    std::ostringstream out;
    out << "d_z,run,seed,ape,jerk\n";
    for (const auto& r : result.runs)
        out << r.d_z << ',' << r.run << ',' << r.seed << ',' << textio::format_double(r.ape) << ','
            << textio::format_double(r.jerk) << '\n';
    textio::write_file_atomic(path, out.str());
}

}  // namespace gg::train
