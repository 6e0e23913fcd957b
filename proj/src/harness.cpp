#include "ficsthresh/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fics {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

void ExperimentConfig::validate() const {
    if (images.empty()) throw std::invalid_argument("experiment needs at least one image");
    if (algorithms.empty()) throw std::invalid_argument("experiment needs at least one algorithm");
    if (runs < 1) throw std::invalid_argument("runs must be >= 1");
    if (threshold_counts.empty()) throw std::invalid_argument("experiment needs at least one threshold count");
    for (const int m : threshold_counts) {
        if (m < 1) throw std::invalid_argument("threshold counts must be >= 1");
    }
}

OptimizerConfig default_config(Algorithm algorithm, int m) {
    if (m < 1) throw std::invalid_argument("threshold count must be >= 1");
    OptimizerConfig cfg;
    cfg.algorithm = algorithm;
    cfg.population_size = 30;
    cfg.dim = m;
    cfg.max_evaluations = 1200 * m;
    cfg.lambda = 1.5;
    cfg.alpha = 1.0;
    cfg.neighbors = 3;
    cfg.pa = (algorithm == Algorithm::FICS) ? 0.5 : 0.25;
    cfg.inertia_start = 0.95;
    cfg.inertia_end = 0.4;
    cfg.acceleration = 4.0;  // cognitive 2 + social 2
    return cfg;
}

std::uint64_t derive_seed(std::uint64_t master_seed, int image_index, int m,
                          int algorithm_index, int run_index) {
    std::uint64_t h = master_seed;
    const std::uint64_t fields[4] = {
        static_cast<std::uint64_t>(image_index), static_cast<std::uint64_t>(m),
        static_cast<std::uint64_t>(algorithm_index), static_cast<std::uint64_t>(run_index)};
    // each field is whitened before absorption so that small coordinated
    // changes of (master, field) cannot align the state
    for (const std::uint64_t f : fields) h = mix64(h ^ mix64(f));
    return h;
}

namespace {

std::string image_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

void apply_overrides(OptimizerConfig& cfg, const std::map<std::string, double>& overrides) {
    const std::string prefix = std::string(algorithm_name(cfg.algorithm)) + ".";
    std::string lower = prefix;
    for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (const auto& [key, value] : overrides) {
        if (key.size() <= lower.size() || key.compare(0, lower.size(), lower) != 0) continue;
        const std::string param = key.substr(lower.size());
        if (param == "pa") cfg.pa = value;
        else if (param == "lambda") cfg.lambda = value;
        else if (param == "alpha") cfg.alpha = value;
        else if (param == "neighbors") cfg.neighbors = static_cast<int>(value);
        else if (param == "np") cfg.population_size = static_cast<int>(value);
        else if (param == "maxfes") cfg.max_evaluations = static_cast<int>(value);
        else if (param == "accel") cfg.acceleration = value;
        else if (param == "inertia_start") cfg.inertia_start = value;
        else if (param == "inertia_end") cfg.inertia_end = value;
        else throw std::runtime_error("unknown override key '" + key + "'");
    }
}

// index of the control algorithm for pairwise verdicts: FICS when present,
// the first configured algorithm otherwise
std::size_t control_position(const std::vector<Algorithm>& algorithms) {
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
        if (algorithms[i] == Algorithm::FICS) return i;
    }
    return 0;
}

std::vector<double> best_fitness_samples(const CellResult& cell) {
    std::vector<double> v;
    v.reserve(cell.records.size());
    for (const RunRecord& r : cell.records) v.push_back(r.best_fitness);
    return v;
}

}  // namespace

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    struct LoadedImage {
        std::string id;
        GrayImage image;
        ObjectiveContext ctx;
    };
    std::vector<LoadedImage> loaded;
    loaded.reserve(cfg.images.size());
    for (const std::string& path : cfg.images) {
        LoadedImage li;
        li.id = image_stem(path);
        li.image = load_pgm(path);  // throws a named error before any run starts
        li.ctx = build_context(compute_histogram(li.image));
        loaded.push_back(std::move(li));
    }

    std::vector<CellResult> results;
    for (std::size_t ii = 0; ii < loaded.size(); ++ii) {
        for (const int m : cfg.threshold_counts) {
            for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
                CellResult cell;
                cell.image_id = loaded[ii].id;
                cell.m = m;
                cell.algorithm = cfg.algorithms[ai];
                cell.records.reserve(static_cast<std::size_t>(cfg.runs));
                for (int r = 0; r < cfg.runs; ++r) {
                    OptimizerConfig ocfg = default_config(cell.algorithm, m);
                    apply_overrides(ocfg, cfg.overrides);
                    ocfg.seed = derive_seed(cfg.master_seed, static_cast<int>(ii), m,
                                            static_cast<int>(ai), r);
                    cell.records.push_back(run(ocfg, loaded[ii].ctx));
                }
                const std::vector<double> samples = best_fitness_samples(cell);
                cell.fitness_summary = summarize(samples);
                std::size_t best_run = 0;
                for (std::size_t r = 1; r < cell.records.size(); ++r) {
                    if (cell.records[r].best_fitness > cell.records[best_run].best_fitness) best_run = r;
                }
                cell.best_thresholds = cell.records[best_run].best_thresholds;
                const GrayImage reconstructed =
                    segment_image(loaded[ii].image, cell.best_thresholds, loaded[ii].ctx);
                cell.quality = quality_report(loaded[ii].image, reconstructed);
                results.push_back(std::move(cell));
            }
        }
    }
    return results;
}

std::string format_sig7(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", v);
    return buf;
}

std::string format_std2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2E", v);
    return buf;
}

namespace {

struct CellKey {
    std::string image_id;
    int m;
};

// groups results by (image, M) preserving first-appearance order
std::vector<std::vector<const CellResult*>> group_cells(const std::vector<CellResult>& results) {
    std::vector<std::vector<const CellResult*>> groups;
    std::vector<CellKey> keys;
    for (const CellResult& cell : results) {
        std::size_t g = keys.size();
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i].image_id == cell.image_id && keys[i].m == cell.m) {
                g = i;
                break;
            }
        }
        if (g == keys.size()) {
            keys.push_back({cell.image_id, cell.m});
            groups.emplace_back();
        }
        groups[g].push_back(&cell);
    }
    return groups;
}

std::string objective_csv(const std::vector<CellResult>& results) {
    std::ostringstream out;
    out << "image,M,algorithm,mean,std,h\n";
    for (const auto& group : group_cells(results)) {
        // control: FICS cell when present, first cell otherwise
        const CellResult* control = group.front();
        for (const CellResult* cell : group) {
            if (cell->algorithm == Algorithm::FICS) {
                control = cell;
                break;
            }
        }
        const std::vector<double> control_samples = best_fitness_samples(*control);
        for (const CellResult* cell : group) {
            std::string h;
            if (cell != control && control->records.size() >= 3 && cell->records.size() >= 3) {
                const PairwiseVerdict v =
                    wilcoxon_rank_sum(control_samples, best_fitness_samples(*cell), 0.05, true);
                h = verdict_symbol(v.h);
            }
            out << cell->image_id << ',' << cell->m << ',' << algorithm_name(cell->algorithm) << ','
                << format_sig7(cell->fitness_summary.mean) << ','
                << format_std2(cell->fitness_summary.std) << ',' << h << '\n';
        }
    }
    return out.str();
}

std::string quality_csv(const std::vector<CellResult>& results) {
    std::ostringstream out;
    out << "# psnr/ssim of the best run's reconstruction per cell\n";
    out << "image,M,algorithm,psnr,ssim\n";
    for (const CellResult& cell : results) {
        out << cell.image_id << ',' << cell.m << ',' << algorithm_name(cell.algorithm) << ','
            << format_sig7(cell.quality.psnr) << ',' << format_sig7(cell.quality.ssim) << '\n';
    }
    return out.str();
}

std::string ranks_csv(const std::vector<CellResult>& results) {
    // every (image, algorithm) mean per M: rows = images, columns = algorithms
    std::vector<int> ms;
    std::vector<std::string> images;
    std::vector<Algorithm> algorithms;
    for (const CellResult& cell : results) {
        if (std::find(ms.begin(), ms.end(), cell.m) == ms.end()) ms.push_back(cell.m);
        if (std::find(images.begin(), images.end(), cell.image_id) == images.end()) {
            images.push_back(cell.image_id);
        }
        if (std::find(algorithms.begin(), algorithms.end(), cell.algorithm) == algorithms.end()) {
            algorithms.push_back(cell.algorithm);
        }
    }
    std::ostringstream out;
    out << "M,algorithm,mean_rank,chi_square\n";
    if (images.size() < 2 || algorithms.size() < 2) return out.str();
    for (const int m : ms) {
        std::vector<std::vector<double>> table(images.size(),
                                               std::vector<double>(algorithms.size(), 0.0));
        bool complete = true;
        for (std::size_t r = 0; r < images.size(); ++r) {
            for (std::size_t c = 0; c < algorithms.size(); ++c) {
                const auto it = std::find_if(results.begin(), results.end(), [&](const CellResult& cell) {
                    return cell.image_id == images[r] && cell.m == m && cell.algorithm == algorithms[c];
                });
                if (it == results.end()) {
                    complete = false;
                } else {
                    table[r][c] = it->fitness_summary.mean;
                }
            }
        }
        if (!complete) continue;
        const FriedmanResult fr = friedman_mean_ranks(table, true);
        for (std::size_t c = 0; c < algorithms.size(); ++c) {
            out << m << ',' << algorithm_name(algorithms[c]) << ',' << format_sig7(fr.mean_ranks[c])
                << ',' << format_sig7(fr.chi_square) << '\n';
        }
    }
    return out.str();
}

ordered_json record_json(const std::string& image_id, int m, Algorithm a, int run_index,
                         const RunRecord& rec) {
    ordered_json j;
    j["image"] = image_id;
    j["M"] = m;
    j["algorithm"] = algorithm_name(a);
    j["run"] = run_index;
    j["seed"] = rec.seed;
    j["bestFitness"] = rec.best_fitness;
    j["bestThresholds"] = rec.best_thresholds;
    j["evaluationsUsed"] = rec.evaluations_used;
    ordered_json traj = ordered_json::array();
    for (const auto& [fe, fit] : rec.trajectory) traj.push_back({fe, fit});
    j["trajectory"] = std::move(traj);
    return j;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void emit_tables(const std::vector<CellResult>& results, const std::string& out_dir) {
    if (results.empty()) throw std::invalid_argument("emit_tables: no results");
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec && !fs::is_directory(dir)) {
        throw std::runtime_error("cannot create output directory '" + out_dir + "'");
    }
    write_file(dir / "objective.csv", objective_csv(results));
    write_file(dir / "quality.csv", quality_csv(results));
    write_file(dir / "ranks.csv", ranks_csv(results));

    std::ostringstream runs;
    for (const CellResult& cell : results) {
        for (std::size_t r = 0; r < cell.records.size(); ++r) {
            runs << record_json(cell.image_id, cell.m, cell.algorithm, static_cast<int>(r),
                                cell.records[r])
                        .dump()
                 << '\n';
        }
    }
    write_file(dir / "runs.jsonl", runs.str());
}

std::vector<RunRow> read_runs_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::vector<RunRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j;
        try {
            j = ordered_json::parse(line);
        } catch (const std::exception& e) {
            throw std::runtime_error("bad JSON on line " + std::to_string(lineno) + " of '" + path +
                                     "': " + e.what());
        }
        RunRow row;
        row.image_id = j.at("image").get<std::string>();
        row.m = j.at("M").get<int>();
        row.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
        row.run_index = j.at("run").get<int>();
        row.record.seed = j.at("seed").get<std::uint64_t>();
        row.record.best_fitness = j.at("bestFitness").get<double>();
        row.record.best_thresholds = j.at("bestThresholds").get<ThresholdVector>();
        row.record.evaluations_used = j.at("evaluationsUsed").get<int>();
        for (const auto& pair : j.at("trajectory")) {
            row.record.trajectory.emplace_back(pair.at(0).get<int>(), pair.at(1).get<double>());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::pair<std::string, std::string> recompute_tables(const std::vector<RunRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("no run rows");
    // rebuild cells (summaries only; no images available for quality)
    std::vector<CellResult> cells;
    for (const RunRow& row : rows) {
        CellResult* cell = nullptr;
        for (CellResult& c : cells) {
            if (c.image_id == row.image_id && c.m == row.m && c.algorithm == row.algorithm) {
                cell = &c;
                break;
            }
        }
        if (cell == nullptr) {
            cells.emplace_back();
            cell = &cells.back();
            cell->image_id = row.image_id;
            cell->m = row.m;
            cell->algorithm = row.algorithm;
        }
        cell->records.push_back(row.record);
    }
    for (CellResult& c : cells) {
        c.fitness_summary = summarize(best_fitness_samples(c));
    }
    return {objective_csv(cells), ranks_csv(cells)};
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string resolve_against(const fs::path& base, const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path.string() : (base / path).string();
}

}  // namespace

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path + "'");
    const fs::path base = fs::path(path).parent_path();
    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key=value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "images") {
                for (const std::string& img : split_list(value)) {
                    cfg.images.push_back(resolve_against(base, img));
                }
            } else if (key == "levels") {
                cfg.threshold_counts.clear();
                for (const std::string& v : split_list(value)) cfg.threshold_counts.push_back(std::stoi(v));
            } else if (key == "algorithms") {
                cfg.algorithms.clear();
                for (const std::string& v : split_list(value)) cfg.algorithms.push_back(algorithm_from_string(v));
            } else if (key == "runs") {
                cfg.runs = std::stoi(value);
            } else if (key == "seed") {
                cfg.master_seed = std::stoull(value);
            } else if (key == "out") {
                cfg.output_dir = resolve_against(base, value);
            } else if (const auto dot = key.find('.'); dot != std::string::npos) {
                const std::string algo = key.substr(0, dot);
                if (algo != "cs" && algo != "fics" && algo != "fipso") {
                    throw std::runtime_error("unknown key '" + key + "'");
                }
                cfg.overrides[key] = std::stod(value);
            } else {
                throw std::runtime_error("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

}  // namespace fics
