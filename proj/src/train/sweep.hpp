#pragma once

#include <string>
#include <vector>

#include "train/config.hpp"
#include "train/corpus.hpp"

namespace gg::train {

struct SweepRun {
    int d_z = 0;
    int run = 0;
    std::uint64_t seed = 0;
    double ape = 0.0;
    double jerk = 0.0;
};

struct SweepRow {
    int d_z = 0;
    double ape_mean = 0.0, ape_sd = 0.0;
    double jerk_mean = 0.0, jerk_sd = 0.0;
};

struct SweepResult {
    std::vector<SweepRun> runs;  // |dims| * runs entries, grouped by dim
    std::vector<SweepRow> rows;
};

// Representation-width sweep: for every d_z trains the autoencoder and the
// speech encoder `runs` times with seeds base.seed+0..runs-1 and reports
// mean and standard deviation of test APE and jerk. Runs are independent;
// `jobs` > 1 executes them on a small worker pool.
SweepResult sweep_dz(const Corpus& corpus, const TrainConfig& base, const std::vector<int>& dims, int runs,
                     int jobs = 1);

// Aggregate CSV: d_z,ape_mean,ape_sd,jerk_mean,jerk_sd.
void write_sweep_csv(const std::string& path, const SweepResult& result, const std::string& config_note = "");
// Per-run CSV: d_z,run,seed,ape,jerk.
void write_sweep_runs_csv(const std::string& path, const SweepResult& result);

}  // namespace gg::train
