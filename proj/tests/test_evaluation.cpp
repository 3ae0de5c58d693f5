#include <doctest.h>

#include <random>

#include "irp/evaluation.hpp"
#include "oracles.hpp"

using namespace irp;

TEST_CASE("evaluate: oracle instance outcomes") {
    const auto inst = oracle::two_customer_instance();
    CHECK(evaluate(inst, {{1, 1}}).outcome == Outcome{0, 36.0});
    CHECK(evaluate(inst, {{2, 2}}).outcome == Outcome{5, 24.0});
    CHECK(evaluate(inst, {{3, 3}}).outcome == Outcome{15, 12.0});
}

TEST_CASE("evaluate: oracle instance plan for pi = (2,2)") {
    const auto inst = oracle::two_customer_instance();
    const auto sol = evaluate(inst, {{2, 2}});
    REQUIRE(sol.plan);
    CHECK(sol.plan->quantities == std::vector<std::vector<std::int64_t>>{{4, 0, 2}, {6, 0, 3}});
    CHECK(sol.plan->end_inventory == std::vector<std::vector<std::int64_t>>{{2, 0, 0}, {3, 0, 0}});
    REQUIRE(sol.plan->per_period_routes.size() == 3);
    CHECK(sol.plan->per_period_routes[0].total_distance == doctest::Approx(12.0));
    CHECK(sol.plan->per_period_routes[1].routes.empty());
    CHECK(sol.plan->per_period_routes[2].total_distance == doctest::Approx(12.0));
}

TEST_CASE("evaluate: capacity truncates the coverage") {
    auto inst = oracle::two_customer_instance();
    inst.vehicle_capacity = 5;
    for (auto& c : inst.customers) c.inventory_capacity = 5;
    // c1 can take two periods (4 <= 5) but not three; c2 only one (6 > 5)
    const auto sol = evaluate(inst, {{3, 3}});
    REQUIRE(sol.plan);
    CHECK(sol.plan->quantities[0] == std::vector<std::int64_t>{4, 0, 2});
    CHECK(sol.plan->quantities[1] == std::vector<std::int64_t>{3, 3, 3});
}

TEST_CASE("evaluate: a demand above the inventory capacity is rejected up front") {
    auto inst = oracle::two_customer_instance();
    inst.customers[1].inventory_capacity = 2;
    CHECK_THROWS_WITH_AS(evaluate(inst, {{1, 1}}), doctest::Contains("customer 2"), std::invalid_argument);
}

TEST_CASE("evaluate: rejects malformed period vectors") {
    const auto inst = oracle::two_customer_instance();
    CHECK_THROWS_AS(evaluate(inst, {{1}}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, {{0, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(inst, {{1, 4}}), std::invalid_argument);
}

TEST_CASE("neighbors") {
    CHECK(neighbors({{1, 1}}, 3) == std::vector<PeriodVector>{{{2, 1}}, {{1, 2}}});
    CHECK(neighbors({{2, 3}}, 3) == std::vector<PeriodVector>{{{1, 3}}, {{3, 3}}, {{2, 2}}});
    CHECK(neighbors({{1}}, 1).empty());
}

TEST_CASE("evaluation matches an independent simulation on random instances") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        GeneratorConfig cfg;
        cfg.n_customers = 1 + static_cast<int>(rng() % 8);
        cfg.horizon = 1 + static_cast<int>(rng() % 12);
        cfg.mean_demand_range = {0, 40};
        cfg.vehicle_capacity = 60 + static_cast<std::int64_t>(rng() % 100);
        cfg.seed = rng();
        const auto inst = generate(cfg);
        Evaluator ev(inst);
        for (int rep = 0; rep < 5; ++rep) {
            PeriodVector pi;
            for (int i = 0; i < cfg.n_customers; ++i) {
                pi.periods.push_back(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(cfg.horizon)));
            }
            const auto sim = oracle::simulate(inst, pi.periods);
            const auto sol = ev.evaluate(pi, true);
            REQUIRE(sol.plan);
            CHECK(sol.plan->quantities == sim.quantity);
            CHECK(sol.plan->end_inventory == sim.inventory);
            CHECK(sol.outcome.inventory == sim.inventory_sum);

            // balance: I_t = I_{t-1} + q_t - d_t >= 0, and every stock-out is covered
            for (std::size_t i = 0; i < inst.size(); ++i) {
                std::int64_t prev = 0;
                for (int t = 0; t < inst.horizon; ++t) {
                    const auto q = sol.plan->quantities[i][static_cast<std::size_t>(t)];
                    const auto inv = sol.plan->end_inventory[i][static_cast<std::size_t>(t)];
                    CHECK(inv == prev + q - inst.customers[i].demand[static_cast<std::size_t>(t)]);
                    CHECK(inv >= 0);
                    CHECK(q <= inst.vehicle_capacity);
                    CHECK(prev + q <= inst.customers[i].inventory_capacity);
                    // a delivery happens exactly when the carried stock is short
                    CHECK((q > 0) == (prev < inst.customers[i].demand[static_cast<std::size_t>(t)]));
                    prev = inv;
                }
            }

            double routing = 0.0;
            for (const auto& r : sol.plan->per_period_routes) routing += r.total_distance;
            CHECK(sol.outcome.routing == doctest::Approx(routing));
            CHECK(ev.outcome(pi) == sol.outcome);
            CHECK(evaluate(inst, pi).outcome == sol.outcome);
        }
    }
}

TEST_CASE("identical periods: g1 grows with the common value under constant demand") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        GeneratorConfig cfg;
        cfg.n_customers = 1 + static_cast<int>(rng() % 6);
        cfg.horizon = 2 + static_cast<int>(rng() % 15);
        cfg.noise_fraction = 0.0;
        cfg.seed = rng();
        const auto inst = generate(cfg);
        Evaluator ev(inst);
        std::int64_t prev = -1;
        for (int m = 1; m <= inst.horizon; ++m) {
            const auto g1 = ev.outcome({std::vector<int>(inst.size(), m)}).inventory;
            CHECK(g1 >= prev);
            prev = g1;
        }
    }
}

TEST_CASE("identical periods: g1 can fall when demand varies") {
    Instance inst;
    inst.horizon = 4;
    inst.vehicle_capacity = 200;
    inst.customers.push_back({1, {1.0, 0.0}, 200, {1, 1, 1, 100}});
    // m = 2 refills at t = 3 and carries 100 units; m = 3 covers t = 1..3 at once
    CHECK(evaluate(inst, {{2}}).outcome.inventory == 101);
    CHECK(evaluate(inst, {{3}}).outcome.inventory == 3);
}

TEST_CASE("a small period cache gives the same outcomes") {
    GeneratorConfig cfg;
    cfg.n_customers = 12;
    cfg.horizon = 10;
    cfg.seed = 4;
    const auto inst = generate(cfg);
    Evaluator big(inst);
    Evaluator tiny(inst, 3);
    std::mt19937_64 rng(1);
    for (int rep = 0; rep < 40; ++rep) {
        PeriodVector pi;
        for (int i = 0; i < cfg.n_customers; ++i) pi.periods.push_back(1 + static_cast<int>(rng() % 10));
        CHECK(big.outcome(pi) == tiny.outcome(pi));
    }
}
