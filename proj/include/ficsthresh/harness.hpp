#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ficsthresh/optimizer.hpp"
#include "ficsthresh/segmetrics.hpp"
#include "ficsthresh/stats.hpp"

namespace fics {

struct ExperimentConfig {
    std::vector<std::string> images;
    std::vector<int> threshold_counts = {3, 7, 11, 15};
    std::vector<Algorithm> algorithms = {Algorithm::FIPSO, Algorithm::CS, Algorithm::FICS};
    int runs = 30;
    std::uint64_t master_seed = 0;
    std::string output_dir = ".";
    /// Per-algorithm parameter overrides, keyed "cs.pa", "fics.neighbors", ...
    std::map<std::string, double> overrides;

    void validate() const;
};

/// Reference parameters per algorithm for m thresholds: population 30,
/// budget 1200*m, CS pa 0.25 / FICS pa 0.5, lambda 1.5, alpha 1, ring of 3,
/// FIPSO acceleration 2+2 with inertia 0.95 -> 0.4.
OptimizerConfig default_config(Algorithm algorithm, int m);

/// Deterministic per-run seed: the master seed mixed with each grid index in
/// turn through the splitmix64 avalanche finalizer.
std::uint64_t derive_seed(std::uint64_t master_seed, int image_index, int m,
                          int algorithm_index, int run_index);

struct CellResult {
    std::string image_id;
    int m = 0;
    Algorithm algorithm = Algorithm::FICS;
    std::vector<RunRecord> records;
    SampleSummary fitness_summary;
    ThresholdVector best_thresholds;  // of the best run (first on ties)
    QualityReport quality;            // reconstruction quality of the best run
};

/// Executes the full (image x M x algorithm x run) grid in configuration
/// order. All images are loaded up front; an unloadable one aborts before any
/// run starts.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

/// Writes objective.csv, quality.csv, ranks.csv and runs.jsonl to out_dir.
/// Output is a pure function of the results (byte-stable across reruns).
void emit_tables(const std::vector<CellResult>& results, const std::string& out_dir);

/// Row of runs.jsonl; also the unit re-read by the stats subcommand.
struct RunRow {
    std::string image_id;
    int m = 0;
    Algorithm algorithm = Algorithm::FICS;
    int run_index = 0;
    RunRecord record;
};

std::vector<RunRow> read_runs_jsonl(const std::string& path);

/// Recomputes the objective summary table (with verdicts) and the per-M
/// Friedman ranks from stored run rows; returns the two CSV bodies.
std::pair<std::string, std::string> recompute_tables(const std::vector<RunRow>& rows);

/// Flat key=value experiment file. Keys: images, levels, algorithms, runs,
/// seed, out, plus dotted per-algorithm overrides (e.g. fics.pa=0.5). '#'
/// starts a comment. Relative image/out paths resolve against the config
/// file's directory.
ExperimentConfig parse_config_file(const std::string& path);

/// Significant-digit text used in the CSV outputs: 7 significant digits,
/// "inf" for infinity.
std::string format_sig7(double v);

/// Standard-deviation text used in the CSV outputs: scientific, 2 decimals.
std::string format_std2(double v);

}  // namespace fics
