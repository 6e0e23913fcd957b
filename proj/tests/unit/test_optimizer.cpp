#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "../common/fixtures.hpp"
#include "ficsthresh/optimizer.hpp"

using namespace fics;

namespace {

OptimizerConfig small_config(Algorithm a, int dim, int np = 6, int budget = 600) {
    OptimizerConfig cfg;
    cfg.algorithm = a;
    cfg.population_size = np;
    cfg.dim = dim;
    cfg.max_evaluations = budget;
    cfg.pa = (a == Algorithm::FICS) ? 0.5 : 0.25;
    return cfg;
}

bool in_bounds(const std::vector<Candidate>& pop, const OptimizerConfig& cfg) {
    for (const Candidate& c : pop) {
        for (const double x : c.position) {
            if (x < cfg.lower_bound || x > cfg.upper_bound) return false;
        }
    }
    return true;
}

std::vector<double> fitnesses(const std::vector<Candidate>& pop) {
    std::vector<double> f;
    for (const Candidate& c : pop) f.push_back(c.fitness);
    return f;
}

}  // namespace

TEST_CASE("config validation") {
    OptimizerConfig cfg = small_config(Algorithm::CS, 2);
    CHECK_NOTHROW(cfg.validate());
    cfg.population_size = 3;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config(Algorithm::FICS, 2);
    cfg.neighbors = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = small_config(Algorithm::FICS, 2);
    cfg.max_evaluations = cfg.population_size - 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("algorithm names round-trip") {
    for (const Algorithm a : {Algorithm::CS, Algorithm::FICS, Algorithm::FIPSO}) {
        CHECK(algorithm_from_string(algorithm_name(a)) == a);
    }
    CHECK(algorithm_from_string("fics") == Algorithm::FICS);
    CHECK_THROWS_AS(algorithm_from_string("GA"), std::invalid_argument);
}

TEST_CASE("evaluator guards its budget") {
    const ObjectiveContext ctx = build_context(fixtures::two_spike());
    Evaluator eval(ctx, 1);
    const std::vector<double> pos{10.0};
    eval.evaluate(pos);
    CHECK(eval.exhausted());
    CHECK(eval.used() == 1);
    CHECK_THROWS_AS(eval.evaluate(pos), std::logic_error);
}

TEST_CASE("init_population evaluates every candidate") {
    const ObjectiveContext ctx = build_context(fixtures::bimodal());
    const OptimizerConfig cfg = small_config(Algorithm::CS, 1, 4);
    Evaluator eval(ctx, cfg.max_evaluations);
    RngStream rng(11);
    const std::vector<Candidate> pop = init_population(cfg, eval, rng);
    REQUIRE(pop.size() == 4);
    CHECK(eval.used() == 4);
    CHECK(in_bounds(pop, cfg));
    for (const Candidate& c : pop) {
        CHECK(c.fitness == otsu_value(ctx, decode_position(c.position)));
    }
}

TEST_CASE("degenerate objective: first candidate wins the tie") {
    const ObjectiveContext ctx = build_context(fixtures::single_spike());
    const OptimizerConfig cfg = small_config(Algorithm::CS, 1, 4);
    Evaluator eval(ctx, cfg.max_evaluations);
    RngStream rng(2);
    const std::vector<Candidate> pop = init_population(cfg, eval, rng);
    for (const Candidate& c : pop) CHECK(c.fitness == 0.0);
    CHECK(best_index(pop) == 0);
}

TEST_CASE("identical seeds give identical populations") {
    const ObjectiveContext ctx = build_context(fixtures::bimodal());
    const OptimizerConfig cfg = small_config(Algorithm::CS, 3, 5);
    Evaluator e1(ctx, cfg.max_evaluations), e2(ctx, cfg.max_evaluations);
    RngStream r1(123), r2(123);
    const auto p1 = init_population(cfg, e1, r1);
    const auto p2 = init_population(cfg, e2, r2);
    REQUIRE(p1.size() == p2.size());
    for (std::size_t i = 0; i < p1.size(); ++i) {
        CHECK(p1[i].position == p2[i].position);
        CHECK(p1[i].fitness == p2[i].fitness);
    }
}

TEST_CASE("levy_flight_phase") {
    const ObjectiveContext ctx = build_context(fixtures::two_spike());
    OptimizerConfig cfg = small_config(Algorithm::CS, 1, 4);

    SUBCASE("the best candidate does not move off itself") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(5);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const int bi = best_index(pop);
        const std::vector<double> best = pop[static_cast<std::size_t>(bi)].position;
        const std::vector<double> before = best;
        levy_flight_phase(pop, best, cfg, eval, rng);
        CHECK(pop[static_cast<std::size_t>(bi)].position == before);
    }
    SUBCASE("alpha zero freezes everyone") {
        cfg.alpha = 0.0;
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(6);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const std::vector<Candidate> before = pop;
        levy_flight_phase(pop, pop[static_cast<std::size_t>(best_index(pop))].position, cfg, eval, rng);
        for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i].position == before[i].position);
    }
    SUBCASE("greedy selection never loses fitness and stays in bounds") {
        const ObjectiveContext mix = build_context(fixtures::bimodal());
        Evaluator eval(mix, cfg.max_evaluations);
        RngStream rng(7);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const std::vector<double> before = fitnesses(pop);
        levy_flight_phase(pop, pop[static_cast<std::size_t>(best_index(pop))].position, cfg, eval, rng);
        const std::vector<double> after = fitnesses(pop);
        for (std::size_t i = 0; i < pop.size(); ++i) CHECK(after[i] >= before[i]);
        CHECK(in_bounds(pop, cfg));
    }
}

TEST_CASE("cs_breeding_phase") {
    const ObjectiveContext ctx = build_context(fixtures::bimodal());
    OptimizerConfig cfg = small_config(Algorithm::CS, 2, 5);

    SUBCASE("pa = 1 never mutates") {
        cfg.pa = 1.0;
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(8);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const std::vector<Candidate> before = pop;
        cs_breeding_phase(pop, cfg, eval, rng);
        for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i].position == before[i].position);
        CHECK(eval.used() == 2 * 5);  // trials still evaluated
    }
    SUBCASE("collapsed population stays collapsed") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(9);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        for (Candidate& c : pop) {
            c.position = {100.0, 200.0};
            c.fitness = eval.evaluate(c.position);
        }
        cs_breeding_phase(pop, cfg, eval, rng);
        for (const Candidate& c : pop) CHECK(c.position == std::vector<double>{100.0, 200.0});
    }
    SUBCASE("pa = 0 mutates every dimension, reproducibly and in bounds") {
        cfg.pa = 0.0;
        Evaluator e1(ctx, cfg.max_evaluations), e2(ctx, cfg.max_evaluations);
        RngStream r1(10), r2(10);
        auto p1 = init_population(cfg, e1, r1);
        auto p2 = init_population(cfg, e2, r2);
        cs_breeding_phase(p1, cfg, e1, r1);
        cs_breeding_phase(p2, cfg, e2, r2);
        for (std::size_t i = 0; i < p1.size(); ++i) {
            CHECK(p1[i].position == p2[i].position);
            CHECK(p1[i].fitness == p2[i].fitness);
        }
        CHECK(in_bounds(p1, cfg));
    }
}

TEST_CASE("ring_neighbors wraps around") {
    CHECK(ring_neighbors(0, 30, 1) == std::vector<int>{29, 0, 1});
    CHECK(ring_neighbors(29, 30, 1) == std::vector<int>{28, 29, 0});
    CHECK(ring_neighbors(5, 30, 1) == std::vector<int>{4, 5, 6});
    CHECK(ring_neighbors(0, 5, 2) == std::vector<int>{3, 4, 0, 1, 2});
    CHECK_THROWS_AS(ring_neighbors(0, 3, 2), std::invalid_argument);
}

TEST_CASE("fully_informed_point") {
    SUBCASE("constant coordinates are a fixed point") {
        const std::vector<double> f{1.0, 5.0, 2.0};
        const std::vector<double> c{50.0, 50.0, 50.0};
        RngStream rng(3);
        CHECK(fully_informed_point(f, c, rng) == doctest::Approx(50.0).epsilon(1e-12));
    }
    SUBCASE("explicit weights give the weighted mean") {
        const std::vector<double> f{1.0, 2.0, 1.0};
        const std::vector<double> c{10.0, 20.0, 30.0};
        const std::vector<double> r{1.0, 1.0, 1.0};
        CHECK(fully_informed_point(f, c, r) == doctest::Approx(20.0));
    }
    SUBCASE("all-zero fitness falls back to the center coordinate") {
        const std::vector<double> f{0.0, 0.0, 0.0};
        const std::vector<double> c{10.0, 20.0, 30.0};
        RngStream rng(4);
        CHECK(fully_informed_point(f, c, rng) == 20.0);
    }
    SUBCASE("always inside the neighbor hull") {
        RngStream rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> f(5), c(5);
            for (auto& v : f) v = rng.uniform(0.0, 100.0);
            for (auto& v : c) v = rng.uniform(0.0, 255.0);
            const double fi = fully_informed_point(f, c, rng);
            CHECK(fi >= *std::min_element(c.begin(), c.end()) - 1e-9);
            CHECK(fi <= *std::max_element(c.begin(), c.end()) + 1e-9);
        }
    }
}

TEST_CASE("fics_breeding_phase") {
    const ObjectiveContext ctx = build_context(fixtures::two_spike());
    OptimizerConfig cfg = small_config(Algorithm::FICS, 1, 6);

    SUBCASE("pa = 1 never mutates") {
        cfg.pa = 1.0;
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(12);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const std::vector<Candidate> before = pop;
        fics_breeding_phase(pop, cfg, eval, rng);
        for (std::size_t i = 0; i < pop.size(); ++i) CHECK(pop[i].position == before[i].position);
    }
    SUBCASE("fully collapsed population is a fixed point") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(13);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        for (Candidate& c : pop) {
            c.position = {140.0};
            c.fitness = eval.evaluate(c.position);
        }
        fics_breeding_phase(pop, cfg, eval, rng);
        for (const Candidate& c : pop) CHECK(c.position == std::vector<double>{140.0});
    }
    SUBCASE("greedy monotonicity on the two-spike objective") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(14);
        std::vector<Candidate> pop = init_population(cfg, eval, rng);
        const std::vector<double> before = fitnesses(pop);
        fics_breeding_phase(pop, cfg, eval, rng);
        const std::vector<double> after = fitnesses(pop);
        for (std::size_t i = 0; i < pop.size(); ++i) CHECK(after[i] >= before[i]);
        CHECK(in_bounds(pop, cfg));
    }
}

TEST_CASE("fipso_step") {
    const ObjectiveContext ctx = build_context(fixtures::bimodal());
    OptimizerConfig cfg = small_config(Algorithm::FIPSO, 1, 5);

    SUBCASE("equilibrium: pbest at the particle and zero velocity") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(15);
        FipsoState st;
        st.population = init_population(cfg, eval, rng);
        for (Candidate& c : st.population) {
            c.position = {77.0};
            c.fitness = eval.evaluate(c.position);
        }
        st.personal_best = st.population;
        st.velocity.assign(st.population.size(), std::vector<double>(1, 0.0));
        fipso_step(st, cfg, eval, rng, 0, 10);
        for (const Candidate& c : st.population) CHECK(c.position == std::vector<double>{77.0});
    }
    SUBCASE("inertia schedule endpoints") {
        CHECK(fipso_inertia(cfg, 0, 100) == doctest::Approx(0.95));
        CHECK(fipso_inertia(cfg, 99, 100) == doctest::Approx(0.4));
        CHECK(fipso_inertia(cfg, 0, 1) == doctest::Approx(0.95));
    }
    SUBCASE("best-so-far never decreases") {
        Evaluator eval(ctx, cfg.max_evaluations);
        RngStream rng(16);
        FipsoState st;
        st.population = init_population(cfg, eval, rng);
        st.personal_best = st.population;
        st.velocity.assign(st.population.size(), std::vector<double>(1, 0.0));
        double prev = eval.best_fitness();
        for (int it = 0; it < 10; ++it) {
            fipso_step(st, cfg, eval, rng, it, 10);
            CHECK(eval.best_fitness() >= prev);
            prev = eval.best_fitness();
            CHECK(in_bounds(st.population, cfg));
        }
    }
}

TEST_CASE("run") {
    const ObjectiveContext ctx = build_context(fixtures::two_spike());

    SUBCASE("budget equal to the population returns the best of the initial draw") {
        OptimizerConfig cfg = small_config(Algorithm::FICS, 1, 6, 6);
        cfg.seed = 20;
        const RunRecord rec = run(cfg, ctx);
        CHECK(rec.evaluations_used == 6);
        CHECK(rec.best_fitness == doctest::Approx(16256.25));
    }
    SUBCASE("identical config and seed replay bit-exactly") {
        for (const Algorithm a : {Algorithm::CS, Algorithm::FICS, Algorithm::FIPSO}) {
            OptimizerConfig cfg = small_config(a, 2, 6, 120);
            cfg.seed = 21;
            const RunRecord r1 = run(cfg, ctx);
            const RunRecord r2 = run(cfg, ctx);
            CHECK(r1.best_fitness == r2.best_fitness);
            CHECK(r1.best_thresholds == r2.best_thresholds);
            CHECK(r1.evaluations_used == r2.evaluations_used);
            CHECK(r1.trajectory == r2.trajectory);
        }
    }
    SUBCASE("every algorithm solves the two-spike problem at the default budget") {
        for (const Algorithm a : {Algorithm::CS, Algorithm::FICS, Algorithm::FIPSO}) {
            OptimizerConfig cfg = small_config(a, 1, 30, 1200);
            cfg.neighbors = 3;
            cfg.seed = 22;
            const RunRecord rec = run(cfg, ctx);
            CHECK(rec.best_fitness == doctest::Approx(16256.25).epsilon(1e-12));
            CHECK(rec.evaluations_used == 1200);
        }
    }
    SUBCASE("budget accounting and trajectory monotonicity") {
        const ObjectiveContext mix = build_context(fixtures::trimodal());
        for (const Algorithm a : {Algorithm::CS, Algorithm::FICS, Algorithm::FIPSO}) {
            OptimizerConfig cfg = small_config(a, 3, 7, 500);  // budget not divisible by Np
            cfg.seed = 23;
            const RunRecord rec = run(cfg, mix);
            CHECK(rec.evaluations_used == 500);
            REQUIRE(!rec.trajectory.empty());
            for (std::size_t i = 1; i < rec.trajectory.size(); ++i) {
                CHECK(rec.trajectory[i].second > rec.trajectory[i - 1].second);
                CHECK(rec.trajectory[i].first > rec.trajectory[i - 1].first);
            }
            CHECK(rec.trajectory.back().second == rec.best_fitness);
            CHECK(rec.trajectory.back().first <= rec.evaluations_used);
        }
    }
    SUBCASE("M=1 runs reach the exhaustive optimum") {
        const ObjectiveContext mix = build_context(fixtures::bimodal());
        const auto [opt_t, opt_v] = exhaustive_search(mix, 1);
        for (const Algorithm a : {Algorithm::CS, Algorithm::FICS}) {
            OptimizerConfig cfg = small_config(a, 1, 30, 1200);
            int hits = 0;
            for (int r = 0; r < 5; ++r) {
                cfg.seed = 3000 + static_cast<std::uint64_t>(r);
                if (std::abs(run(cfg, mix).best_fitness - opt_v) <= 1e-12 * opt_v) ++hits;
            }
            CHECK(hits == 5);
        }
    }
}
