#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ficsthresh/objective.hpp"
#include "ficsthresh/rng.hpp"

namespace fics {

enum class Algorithm { CS, FICS, FIPSO };

Algorithm algorithm_from_string(std::string_view name);
std::string_view algorithm_name(Algorithm a);

struct OptimizerConfig {
    Algorithm algorithm = Algorithm::FICS;
    int population_size = 30;
    int dim = 1;                 // number of thresholds M
    double pa = 0.5;             // mutation probability: a dimension mutates when rand > pa
    double lambda = 1.5;         // Levy exponent
    double alpha = 1.0;          // Levy step scale
    int neighbors = 3;           // ring neighborhood size Ne = 2n+1, includes self
    int max_evaluations = 1200;
    double lower_bound = 0.0;
    double upper_bound = 255.0;
    double inertia_start = 0.95;  // FIPSO only, linear decay over the run
    double inertia_end = 0.4;
    double acceleration = 4.0;    // FIPSO only, total phi split over the neighborhood
    std::uint64_t seed = 0;

    /// Throws std::invalid_argument when a field is out of contract
    /// (population < 4, even neighborhood, budget below one sweep, ...).
    void validate() const;
};

struct Candidate {
    std::vector<double> position;
    double fitness = 0.0;
};

struct RunRecord {
    double best_fitness = 0.0;
    ThresholdVector best_thresholds;
    int evaluations_used = 0;
    std::uint64_t seed = 0;
    /// (evaluation count, best-so-far fitness); one entry per strict improvement.
    std::vector<std::pair<int, double>> trajectory;
};

/// Counts objective calls against the budget and tracks the best decoded
/// solution over every evaluation made in the run.
class Evaluator {
 public:
    Evaluator(const ObjectiveContext& ctx, int max_evaluations);

    /// Decodes, scores, and books one evaluation. Must not be called once
    /// exhausted() is true.
    double evaluate(std::span<const double> position);

    bool exhausted() const { return used_ >= max_evaluations_; }
    int used() const { return used_; }
    int budget() const { return max_evaluations_; }
    double best_fitness() const { return best_fitness_; }
    const ThresholdVector& best_thresholds() const { return best_thresholds_; }
    const std::vector<std::pair<int, double>>& trajectory() const { return trajectory_; }

 private:
    const ObjectiveContext* ctx_;
    int max_evaluations_;
    int used_ = 0;
    double best_fitness_;
    ThresholdVector best_thresholds_;
    std::vector<std::pair<int, double>> trajectory_;
};

/// Scale of the Mantegna step numerator:
/// sigma_u = [Gamma(1+lambda) sin(pi lambda/2) /
///            (Gamma((1+lambda)/2) lambda 2^((lambda-1)/2))]^(1/lambda)
double mantegna_sigma_u(double lambda);

/// One heavy-tailed step per dimension, step = u / |v|^(1/lambda) with
/// u ~ N(0, sigma_u^2) and v ~ N(0, 1). Requires 1 < lambda <= 2.
std::vector<double> levy_step(RngStream& rng, double lambda, int dim);

/// Indices index-n .. index+n modulo population_size, center included.
std::vector<int> ring_neighbors(int index, int population_size, int half_width);

/// Fitness-weighted neighborhood mean for one dimension: weights are
/// rands[k] * fitnesses[k]; when every weight is zero the center neighbor's
/// coordinate is returned unchanged.
double fully_informed_point(std::span<const double> fitnesses,
                            std::span<const double> coords,
                            std::span<const double> rands);

/// Same, drawing one fresh uniform weight factor per neighbor from rng.
double fully_informed_point(std::span<const double> fitnesses,
                            std::span<const double> coords, RngStream& rng);

/// Uniform random population within bounds, every candidate evaluated
/// (consumes population_size evaluations).
std::vector<Candidate> init_population(const OptimizerConfig& cfg, Evaluator& eval,
                                       RngStream& rng);

/// Index of the fittest candidate; first one wins ties.
int best_index(const std::vector<Candidate>& pop);

// Phase operators. Each consumes at most one evaluation per candidate, stops
// early when the budget runs out, and replaces a candidate only on strict
// fitness improvement. The caller refreshes the global best after the phase.
//
// Draw order per run is fixed so seeded runs replay exactly:
//   init:      per candidate, per dimension: one uniform
//   levy:      per candidate, per dimension: normal u then normal v
//              (each normal consumes two uniforms)
//   breeding:  per candidate: peer picks r1, r2 (one uniform each), then per
//              dimension: the mutation gate; if taken, FICS draws one weight
//              uniform per ring neighbor (in ring order) and then epsilon,
//              CS draws epsilon only
//   fipso:     per candidate, per dimension, per ring neighbor: one uniform

void levy_flight_phase(std::vector<Candidate>& pop, const std::vector<double>& best_position,
                       const OptimizerConfig& cfg, Evaluator& eval, RngStream& rng);

void cs_breeding_phase(std::vector<Candidate>& pop, const OptimizerConfig& cfg,
                       Evaluator& eval, RngStream& rng);

void fics_breeding_phase(std::vector<Candidate>& pop, const OptimizerConfig& cfg,
                         Evaluator& eval, RngStream& rng);

struct FipsoState {
    std::vector<Candidate> population;
    std::vector<std::vector<double>> velocity;
    std::vector<Candidate> personal_best;
};

/// Linear inertia schedule: inertia_start at iteration 0, inertia_end at the
/// final iteration.
double fipso_inertia(const OptimizerConfig& cfg, int iteration, int max_iterations);

void fipso_step(FipsoState& state, const OptimizerConfig& cfg, Evaluator& eval,
                RngStream& rng, int iteration, int max_iterations);

/// Full seeded run of the configured algorithm under the evaluation budget.
RunRecord run(const OptimizerConfig& cfg, const ObjectiveContext& ctx);

}  // namespace fics
