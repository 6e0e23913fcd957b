// ficsthresh command line: multilevel Otsu thresholding driven by cuckoo
// search variants, plus the experiment harness around them.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ficsthresh/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void print_quality(const fics::QualityReport& q) {
    std::cout << "psnr: " << fics::format_sig7(q.psnr) << "\n";
    std::cout << "ssim: " << fics::format_sig7(q.ssim) << "\n";
}

int cmd_run(const std::string& config_path) {
    const fics::ExperimentConfig cfg = fics::parse_config_file(config_path);
    const std::vector<fics::CellResult> results = fics::run_experiment(cfg);
    fics::emit_tables(results, cfg.output_dir);
    std::cout << "wrote objective.csv, quality.csv, ranks.csv, runs.jsonl to " << cfg.output_dir
              << "\n";
    return kExitOk;
}

int cmd_segment(const std::string& image_path, int levels, const std::string& algorithm,
                std::uint64_t seed, const std::string& out_path) {
    const fics::GrayImage img = fics::load_pgm(image_path);
    const fics::ObjectiveContext ctx = fics::build_context(fics::compute_histogram(img));
    fics::OptimizerConfig cfg = fics::default_config(fics::algorithm_from_string(algorithm), levels);
    cfg.seed = seed;
    const fics::RunRecord rec = fics::run(cfg, ctx);
    const fics::GrayImage seg = fics::segment_image(img, rec.best_thresholds, ctx);
    fics::save_pgm(seg, out_path);
    std::cout << "thresholds:";
    for (const int t : rec.best_thresholds) std::cout << ' ' << t;
    std::cout << "\nobjective: " << fics::format_sig7(rec.best_fitness) << "\n";
    print_quality(fics::quality_report(img, seg));
    return kExitOk;
}

int cmd_oracle(const std::string& image_path, int levels) {
    const fics::GrayImage img = fics::load_pgm(image_path);
    const fics::ObjectiveContext ctx = fics::build_context(fics::compute_histogram(img));
    const auto [thresholds, value] = fics::exhaustive_search(ctx, levels);
    std::cout << "thresholds:";
    for (const int t : thresholds) std::cout << ' ' << t;
    std::cout << "\nobjective: " << fics::format_sig7(value) << "\n";
    return kExitOk;
}

int cmd_stats(const std::string& runs_path, const std::string& out_dir) {
    const std::vector<fics::RunRow> rows = fics::read_runs_jsonl(runs_path);
    const auto [objective, ranks] = fics::recompute_tables(rows);
    if (out_dir.empty()) {
        std::cout << objective << "\n" << ranks;
    } else {
        namespace fs = std::filesystem;
        fs::create_directories(out_dir);
        std::ofstream(fs::path(out_dir) / "objective.csv") << objective;
        std::ofstream(fs::path(out_dir) / "ranks.csv") << ranks;
        std::cout << "wrote objective.csv, ranks.csv to " << out_dir << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multilevel Otsu thresholding via cuckoo search variants"};
    app.require_subcommand(1);

    std::string config_path;
    CLI::App* run = app.add_subcommand("run", "execute an experiment grid from a config file");
    run->add_option("--config", config_path, "key=value experiment file")->required();

    std::string seg_image, seg_algorithm = "FICS", seg_out;
    int seg_levels = 0;
    std::uint64_t seg_seed = 0;
    CLI::App* segment = app.add_subcommand("segment", "single seeded run; writes the segmented PGM");
    segment->add_option("--image", seg_image, "input PGM")->required();
    segment->add_option("--levels", seg_levels, "number of thresholds M")->required()
        ->check(CLI::PositiveNumber);
    segment->add_option("--algorithm", seg_algorithm, "CS, FICS or FIPSO");
    segment->add_option("--seed", seg_seed, "run seed");
    segment->add_option("--out", seg_out, "output PGM path")->required();

    std::string oracle_image;
    int oracle_levels = 0;
    CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum (M <= 3)");
    oracle->add_option("--image", oracle_image, "input PGM")->required();
    oracle->add_option("--levels", oracle_levels, "number of thresholds M")->required();

    std::string stats_runs, stats_out;
    CLI::App* stats = app.add_subcommand("stats", "recompute summaries/verdicts/ranks from runs.jsonl");
    stats->add_option("--runs", stats_runs, "runs.jsonl path")->required();
    stats->add_option("--out", stats_out, "directory for recomputed CSVs (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run) return cmd_run(config_path);
        if (*segment) return cmd_segment(seg_image, seg_levels, seg_algorithm, seg_seed, seg_out);
        if (*oracle) return cmd_oracle(oracle_image, oracle_levels);
        if (*stats) return cmd_stats(stats_runs, stats_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitUsage;
}
