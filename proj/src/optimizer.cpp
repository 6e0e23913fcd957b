#include "ficsthresh/optimizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fics {

Algorithm algorithm_from_string(std::string_view name) {
    std::string up(name);
    for (char& c : up) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (up == "CS") return Algorithm::CS;
    if (up == "FICS") return Algorithm::FICS;
    if (up == "FIPSO") return Algorithm::FIPSO;
    throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::CS: return "CS";
        case Algorithm::FICS: return "FICS";
        case Algorithm::FIPSO: return "FIPSO";
    }
    return "?";
}

void OptimizerConfig::validate() const {
    if (population_size < 4) throw std::invalid_argument("population_size must be >= 4");
    if (dim < 1) throw std::invalid_argument("dim must be >= 1");
    if (pa < 0.0 || pa > 1.0) throw std::invalid_argument("pa must lie in [0, 1]");
    if (!(lambda > 1.0 && lambda <= 2.0)) throw std::invalid_argument("lambda must lie in (1, 2]");
    if (neighbors < 1 || neighbors % 2 == 0) throw std::invalid_argument("neighbors must be odd");
    if (neighbors > population_size) throw std::invalid_argument("neighbors must be <= population_size");
    if (max_evaluations < population_size) {
        throw std::invalid_argument("max_evaluations must cover at least the initial population");
    }
    if (!(lower_bound < upper_bound)) throw std::invalid_argument("bounds must satisfy lower < upper");
}

Evaluator::Evaluator(const ObjectiveContext& ctx, int max_evaluations)
    : ctx_(&ctx),
      max_evaluations_(max_evaluations),
      best_fitness_(-std::numeric_limits<double>::infinity()) {}

double Evaluator::evaluate(std::span<const double> position) {
    if (exhausted()) throw std::logic_error("evaluation budget exhausted");
    ThresholdVector t = decode_position(position);
    const double value = otsu_value(*ctx_, t);
    ++used_;
    if (value > best_fitness_) {
        best_fitness_ = value;
        best_thresholds_ = std::move(t);
        trajectory_.emplace_back(used_, value);
    }
    return value;
}

double mantegna_sigma_u(double lambda) {
    if (!(lambda > 1.0 && lambda <= 2.0)) throw std::invalid_argument("lambda must lie in (1, 2]");
    const double pi = 3.14159265358979323846;
    const double num = std::tgamma(1.0 + lambda) * std::sin(pi * lambda / 2.0);
    const double den = std::tgamma((1.0 + lambda) / 2.0) * lambda * std::pow(2.0, (lambda - 1.0) / 2.0);
    return std::pow(num / den, 1.0 / lambda);
}

std::vector<double> levy_step(RngStream& rng, double lambda, int dim) {
    const double sigma_u = mantegna_sigma_u(lambda);
    std::vector<double> step(static_cast<std::size_t>(dim));
    for (double& s : step) {
        const double u = sigma_u * rng.normal();
        const double v = rng.normal();
        const double denom = std::pow(std::abs(v), 1.0 / lambda);
        s = denom > 0.0 ? u / denom : 0.0;  // v == 0 is a null event; keep the operator total
    }
    return step;
}

std::vector<int> ring_neighbors(int index, int population_size, int half_width) {
    if (2 * half_width + 1 > population_size) {
        throw std::invalid_argument("ring neighborhood larger than population");
    }
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(2 * half_width + 1));
    for (int d = -half_width; d <= half_width; ++d) {
        out.push_back(((index + d) % population_size + population_size) % population_size);
    }
    return out;
}

double fully_informed_point(std::span<const double> fitnesses,
                            std::span<const double> coords,
                            std::span<const double> rands) {
    double weight_sum = 0.0;
    double weighted = 0.0;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        const double w = rands[k] * fitnesses[k];
        weight_sum += w;
        weighted += w * coords[k];
    }
    if (weight_sum <= 0.0) return coords[coords.size() / 2];  // degenerate: keep the center
    return weighted / weight_sum;
}

double fully_informed_point(std::span<const double> fitnesses,
                            std::span<const double> coords, RngStream& rng) {
    std::vector<double> rands(coords.size());
    for (double& r : rands) r = rng.uniform();
    return fully_informed_point(fitnesses, coords, rands);
}

std::vector<Candidate> init_population(const OptimizerConfig& cfg, Evaluator& eval,
                                       RngStream& rng) {
    std::vector<Candidate> pop(static_cast<std::size_t>(cfg.population_size));
    for (Candidate& c : pop) {
        c.position.resize(static_cast<std::size_t>(cfg.dim));
        for (double& x : c.position) x = rng.uniform(cfg.lower_bound, cfg.upper_bound);
        c.fitness = eval.evaluate(c.position);
    }
    return pop;
}

int best_index(const std::vector<Candidate>& pop) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(pop.size()); ++i) {
        if (pop[i].fitness > pop[best].fitness) best = i;
    }
    return best;
}

namespace {

double clamp_to(const OptimizerConfig& cfg, double x) {
    return std::clamp(x, cfg.lower_bound, cfg.upper_bound);
}

// r1, r2 uniform over the population excluding i and each other, one draw each
std::pair<int, int> pick_distinct_peers(int i, int population_size, RngStream& rng) {
    int r1 = rng.uniform_int(population_size - 1);
    if (r1 >= i) ++r1;
    const int lo = std::min(i, r1);
    const int hi = std::max(i, r1);
    int r2 = rng.uniform_int(population_size - 2);
    if (r2 >= lo) ++r2;
    if (r2 >= hi) ++r2;
    return {r1, r2};
}

void greedy_replace(Candidate& incumbent, std::vector<double>&& position, double fitness) {
    if (fitness > incumbent.fitness) {  // ties keep the incumbent
        incumbent.position = std::move(position);
        incumbent.fitness = fitness;
    }
}

}  // namespace

void levy_flight_phase(std::vector<Candidate>& pop, const std::vector<double>& best_position,
                       const OptimizerConfig& cfg, Evaluator& eval, RngStream& rng) {
    for (Candidate& c : pop) {
        if (eval.exhausted()) return;
        const std::vector<double> step = levy_step(rng, cfg.lambda, cfg.dim);
        std::vector<double> trial(c.position.size());
        for (std::size_t j = 0; j < trial.size(); ++j) {
            trial[j] = clamp_to(cfg, c.position[j] + cfg.alpha * step[j] * (c.position[j] - best_position[j]));
        }
        const double fitness = eval.evaluate(trial);
        greedy_replace(c, std::move(trial), fitness);
    }
}

void cs_breeding_phase(std::vector<Candidate>& pop, const OptimizerConfig& cfg,
                       Evaluator& eval, RngStream& rng) {
    const int np = static_cast<int>(pop.size());
    for (int i = 0; i < np; ++i) {
        if (eval.exhausted()) return;
        const auto [r1, r2] = pick_distinct_peers(i, np, rng);
        std::vector<double> trial = pop[i].position;
        for (int j = 0; j < cfg.dim; ++j) {
            if (rng.uniform() > cfg.pa) {
                const double eps = rng.uniform();
                trial[j] = clamp_to(cfg, trial[j] + eps * (pop[r1].position[j] - pop[r2].position[j]));
            }
        }
        const double fitness = eval.evaluate(trial);
        greedy_replace(pop[i], std::move(trial), fitness);
    }
}

void fics_breeding_phase(std::vector<Candidate>& pop, const OptimizerConfig& cfg,
                         Evaluator& eval, RngStream& rng) {
    const int np = static_cast<int>(pop.size());
    const int half = (cfg.neighbors - 1) / 2;
    std::vector<double> fit(static_cast<std::size_t>(cfg.neighbors));
    std::vector<double> coord(static_cast<std::size_t>(cfg.neighbors));
    std::vector<double> rands(static_cast<std::size_t>(cfg.neighbors));
    for (int i = 0; i < np; ++i) {
        if (eval.exhausted()) return;
        const auto [r1, r2] = pick_distinct_peers(i, np, rng);
        const std::vector<int> ring = ring_neighbors(i, np, half);
        std::vector<double> trial = pop[i].position;
        for (int j = 0; j < cfg.dim; ++j) {
            if (rng.uniform() > cfg.pa) {
                // weights are redrawn for every dimension
                for (std::size_t k = 0; k < ring.size(); ++k) {
                    fit[k] = pop[static_cast<std::size_t>(ring[k])].fitness;
                    coord[k] = pop[static_cast<std::size_t>(ring[k])].position[static_cast<std::size_t>(j)];
                    rands[k] = rng.uniform();
                }
                const double fi = fully_informed_point(fit, coord, rands);
                const double eps = rng.uniform();
                trial[static_cast<std::size_t>(j)] =
                    clamp_to(cfg, fi + eps * (pop[static_cast<std::size_t>(r1)].position[static_cast<std::size_t>(j)] -
                                              pop[static_cast<std::size_t>(r2)].position[static_cast<std::size_t>(j)]));
            }
        }
        const double fitness = eval.evaluate(trial);
        greedy_replace(pop[i], std::move(trial), fitness);
    }
}

double fipso_inertia(const OptimizerConfig& cfg, int iteration, int max_iterations) {
    if (max_iterations <= 1) return cfg.inertia_start;
    double frac = static_cast<double>(iteration) / static_cast<double>(max_iterations - 1);
    frac = std::clamp(frac, 0.0, 1.0);
    return cfg.inertia_start + (cfg.inertia_end - cfg.inertia_start) * frac;
}

void fipso_step(FipsoState& state, const OptimizerConfig& cfg, Evaluator& eval,
                RngStream& rng, int iteration, int max_iterations) {
    const int np = static_cast<int>(state.population.size());
    const int half = (cfg.neighbors - 1) / 2;
    const double w = fipso_inertia(cfg, iteration, max_iterations);
    const double phi_k = cfg.acceleration / static_cast<double>(cfg.neighbors);
    for (int i = 0; i < np; ++i) {
        if (eval.exhausted()) return;
        Candidate& c = state.population[static_cast<std::size_t>(i)];
        std::vector<double>& vel = state.velocity[static_cast<std::size_t>(i)];
        const std::vector<int> ring = ring_neighbors(i, np, half);
        for (int j = 0; j < cfg.dim; ++j) {
            double acc = w * vel[static_cast<std::size_t>(j)];
            for (const int k : ring) {
                const double pbest = state.personal_best[static_cast<std::size_t>(k)].position[static_cast<std::size_t>(j)];
                acc += phi_k * rng.uniform() * (pbest - c.position[static_cast<std::size_t>(j)]);
            }
            vel[static_cast<std::size_t>(j)] = acc;
            c.position[static_cast<std::size_t>(j)] = clamp_to(cfg, c.position[static_cast<std::size_t>(j)] + acc);
        }
        c.fitness = eval.evaluate(c.position);
        Candidate& pb = state.personal_best[static_cast<std::size_t>(i)];
        if (c.fitness > pb.fitness) pb = c;
    }
}

namespace {

void run_cs_family(const OptimizerConfig& cfg, Evaluator& eval, RngStream& rng) {
    std::vector<Candidate> pop = init_population(cfg, eval, rng);
    std::vector<double> best = pop[static_cast<std::size_t>(best_index(pop))].position;
    while (!eval.exhausted()) {
        levy_flight_phase(pop, best, cfg, eval, rng);
        best = pop[static_cast<std::size_t>(best_index(pop))].position;
        if (eval.exhausted()) break;
        if (cfg.algorithm == Algorithm::CS) {
            cs_breeding_phase(pop, cfg, eval, rng);
        } else {
            fics_breeding_phase(pop, cfg, eval, rng);
        }
        best = pop[static_cast<std::size_t>(best_index(pop))].position;
    }
}

void run_fipso(const OptimizerConfig& cfg, Evaluator& eval, RngStream& rng) {
    FipsoState state;
    state.population = init_population(cfg, eval, rng);
    state.personal_best = state.population;
    state.velocity.assign(state.population.size(),
                          std::vector<double>(static_cast<std::size_t>(cfg.dim), 0.0));
    const int per_iter = cfg.population_size;
    const int remaining = cfg.max_evaluations - cfg.population_size;
    const int iterations = (remaining + per_iter - 1) / per_iter;
    for (int it = 0; it < iterations && !eval.exhausted(); ++it) {
        fipso_step(state, cfg, eval, rng, it, iterations);
    }
}

}  // namespace

RunRecord run(const OptimizerConfig& cfg, const ObjectiveContext& ctx) {
    cfg.validate();
    RngStream rng(cfg.seed);
    Evaluator eval(ctx, cfg.max_evaluations);
    if (cfg.algorithm == Algorithm::FIPSO) {
        run_fipso(cfg, eval, rng);
    } else {
        run_cs_family(cfg, eval, rng);
    }
    RunRecord rec;
    rec.best_fitness = eval.best_fitness();
    rec.best_thresholds = eval.best_thresholds();
    rec.evaluations_used = eval.used();
    rec.seed = cfg.seed;
    rec.trajectory = eval.trajectory();
    return rec;
}

}  // namespace fics
