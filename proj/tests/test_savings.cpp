#include <doctest.h>

#include <random>
#include <set>

#include "irp/savings.hpp"
#include "oracles.hpp"

using namespace irp;

TEST_CASE("savings_value") {
    CHECK(savings_value(3, 4, 5) == doctest::Approx(2.0));
    CHECK(savings_value(1, 1, 2) == doctest::Approx(0.0));
    CHECK(savings_value(5, 5, 0) == doctest::Approx(10.0));
}

TEST_CASE("solve_savings on the two-customer geometry") {
    auto inst = oracle::two_customer_instance();

    SUBCASE("uncapacitated merge gives the single 3-4-5 tour") {
        const auto sol = solve_savings(inst, {{1, 2}, {2, 3}});
        REQUIRE(sol.routes.size() == 1);
        CHECK(sol.routes[0].customers.size() == 2);
        CHECK(sol.routes[0].load == 5);
        CHECK(sol.total_distance == doctest::Approx(12.0));
        // both orientations of a 2-customer tour have the same length
        CHECK(sol.total_distance == doctest::Approx(oracle::optimal_tour({{0, 0}, {0, 3}, {4, 0}})));
    }
    SUBCASE("capacity blocks the only merge") {
        inst.vehicle_capacity = 4;
        for (auto& c : inst.customers) c.inventory_capacity = 4;
        const auto sol = solve_savings(inst, {{1, 2}, {2, 3}});
        CHECK(sol.routes.size() == 2);
        CHECK(sol.total_distance == doctest::Approx(14.0));
    }
    SUBCASE("single customer") {
        const auto sol = solve_savings(inst, {{1, 5}});
        REQUIRE(sol.routes.size() == 1);
        CHECK(sol.routes[0].customers == std::vector<int>{1});
        CHECK(sol.total_distance == doctest::Approx(6.0));
    }
    SUBCASE("empty delivery set") {
        const auto sol = solve_savings(inst, {});
        CHECK(sol.routes.empty());
        CHECK(sol.total_distance == 0.0);
    }
    SUBCASE("quantity above Q is rejected") {
        CHECK_THROWS_AS(solve_savings(inst, {{1, 101}}), std::invalid_argument);
    }
}

TEST_CASE("collinear customers on opposite sides of the depot are never merged") {
    Instance inst;
    inst.horizon = 1;
    inst.vehicle_capacity = 10;
    inst.customers.push_back({1, {-1.0, 0.0}, 10, {1}});
    inst.customers.push_back({2, {1.0, 0.0}, 10, {1}});
    const auto sol = solve_savings(inst, {{1, 1}, {2, 1}});
    CHECK(sol.routes.size() == 2);
    CHECK(sol.total_distance == doctest::Approx(4.0));
}

TEST_CASE("savings property: feasibility, stars bound, optimal-tour bound, determinism") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        GeneratorConfig cfg;
        cfg.n_customers = 2 + static_cast<int>(rng() % 6);
        cfg.horizon = 1;
        cfg.mean_demand_range = {1, 30};
        cfg.vehicle_capacity = 40 + static_cast<std::int64_t>(rng() % 60);
        cfg.seed = rng();
        const auto inst = generate(cfg);
        SavingsRouter router(inst);

        std::vector<std::int64_t> q(inst.size(), 0);
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if (rng() % 4 != 0) q[i] = 1 + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(cfg.vehicle_capacity));
        }
        const auto sol = router.route(q);

        std::multiset<int> seen;
        double sum = 0.0;
        for (const auto& r : sol.routes) {
            CHECK(r.load <= inst.vehicle_capacity);
            std::int64_t load = 0;
            double len = 0.0;
            Point prev = inst.depot;
            for (int id : r.customers) {
                seen.insert(id);
                load += q[static_cast<std::size_t>(id - 1)];
                len += euclidean(prev, inst.customers[static_cast<std::size_t>(id - 1)].location);
                prev = inst.customers[static_cast<std::size_t>(id - 1)].location;
            }
            len += euclidean(prev, inst.depot);
            CHECK(load == r.load);
            CHECK(r.length == doctest::Approx(len));
            sum += r.length;
        }
        std::multiset<int> expected;
        double stars = 0.0;
        for (std::size_t i = 0; i < inst.size(); ++i) {
            if (q[i] > 0) {
                expected.insert(static_cast<int>(i) + 1);
                stars += 2.0 * euclidean(inst.depot, inst.customers[i].location);
            }
        }
        CHECK(seen == expected);
        CHECK(sol.total_distance == doctest::Approx(sum));
        CHECK(sol.total_distance <= stars + 1e-9);
        CHECK(router.total_distance(q) == sol.total_distance);
        CHECK(router.route(q) == sol);
    }
}

TEST_CASE("uncapacitated savings is bracketed by the optimal tour and the stars bound") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        GeneratorConfig cfg;
        cfg.n_customers = 1 + static_cast<int>(rng() % 6);
        cfg.horizon = 1;
        cfg.mean_demand_range = {1, 5};
        cfg.vehicle_capacity = 1000000;
        cfg.seed = rng();
        const auto inst = generate(cfg);
        std::vector<std::int64_t> q(inst.size(), 1);
        const auto sol = SavingsRouter(inst).route(q);

        std::vector<Point> pts{inst.depot};
        double stars = 0.0;
        for (const auto& c : inst.customers) {
            pts.push_back(c.location);
            stars += 2.0 * euclidean(inst.depot, c.location);
        }
        CHECK(sol.total_distance >= oracle::optimal_tour(pts) - 1e-9);
        CHECK(sol.total_distance <= stars + 1e-9);
    }
}
