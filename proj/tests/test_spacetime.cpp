#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbqc/spacetime.hpp"

using namespace pbqc;

TEST_CASE("honest completion") {
    const auto g2 = Geometry::collinear(1.0, 0.1, 1.0);
    const auto r2 = honest_completion(g2);
    CHECK(r2.completion == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r2.deadline == r2.completion);

    const auto g3 = Geometry::equilateral(1.0, 0.1, 1.0);
    CHECK(honest_completion(g3).completion == doctest::Approx(2.0).epsilon(1e-12));

    // 2d = 30 km at light speed: 1e-4 s round trip
    const auto gkm = Geometry::collinear(15e3, 1e3, 3e8);
    CHECK(honest_completion(gkm).completion == doctest::Approx(1e-4).epsilon(1e-9));
}

TEST_CASE("cheat completion N=2 collinear equals the deadline") {
    const auto g = Geometry::collinear(1.0, 0.1, 1.0);
    const auto r = cheat_completion(g);
    CHECK(r.completion == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.meets_deadline);

    for (double l = 0.01; l < 1.0; l *= 3.1) {
        const auto rr = cheat_completion(Geometry::collinear(1.0, l, 1.0));
        CHECK(std::abs(rr.completion - rr.deadline) < 1e-12 * rr.deadline);
    }
}

TEST_CASE("cheat completion N=3 equilateral") {
    const auto g = Geometry::equilateral(1.0, 0.1, 1.0);
    const auto r = cheat_completion(g);
    const double want = 2.0 + (std::sqrt(3.0) - 2.0) * 0.1;
    CHECK(r.completion == doctest::Approx(want).epsilon(1e-12));
    CHECK(r.completion < 2.0);
    CHECK(r.meets_deadline);

    // l -> 0 limit approaches the honest deadline
    const auto r0 = cheat_completion(Geometry::equilateral(1.0, 1e-9, 1.0));
    CHECK(r0.completion == doctest::Approx(2.0).epsilon(1e-8));

    // strict win for every l > 0
    for (double l = 0.01; l < 0.9; l += 0.17)
        CHECK(cheat_completion(Geometry::equilateral(1.0, l, 1.0)).completion < 2.0);
}

TEST_CASE("margin is monotone in l") {
    double prev = -1.0;
    for (double l = 0.05; l < 0.8; l += 0.1) {
        const auto r = cheat_completion(Geometry::equilateral(1.0, l, 1.0));
        const double margin = r.deadline - r.completion;
        CHECK(margin >= prev - 1e-12);
        prev = margin;
    }
}

TEST_CASE("no arrival beats straight-line light time") {
    const auto g = Geometry::equilateral(2.0, 0.3, 1.5);
    const auto r = cheat_completion(g);
    for (std::size_t j = 0; j < g.verifiers.size(); ++j) {
        // even a direct V_j -> V_j bounce through the nearest cheater costs
        // at least twice the verifier-to-cheater distance
        const auto gc = g.with_default_cheaters();
        const double lower = 2.0 * distance(g.verifiers[j], gc.cheaters[j]) / g.c;
        CHECK(r.arrivals[j] >= lower - 1e-12);
    }
}

TEST_CASE("cheater placement validation") {
    auto g = Geometry::collinear(1.0, 0.1, 1.0);
    g.cheaters = {{0.05, 0, 0}, {0.9, 0, 0}};
    CHECK_THROWS_AS(g.validate(), std::invalid_argument);
    g.cheaters = {{-0.1, 0, 0}, {0.1, 0, 0}}; // exactly on the boundary is allowed
    CHECK_NOTHROW(g.validate());
    CHECK_NOTHROW(cheat_completion(g));
}

TEST_CASE("feasibility: P between two verifiers") {
    const auto g = Geometry::collinear(1.0, 0.1, 1.0);
    CHECK(feasibility_check(g).feasible);

    auto off = g;
    off.receiver = {1.5, 0, 0}; // beyond V2
    const auto res = feasibility_check(off);
    CHECK(!res.feasible);

    auto off_axis = g;
    off_axis.receiver = {0.0, 0.4, 0}; // off the line
    CHECK(!feasibility_check(off_axis).feasible);
}

TEST_CASE("feasibility: triangle with exterior P has an interior witness") {
    auto g = Geometry::equilateral(1.0, 0.05, 1.0);
    CHECK(feasibility_check(g).feasible);

    g.receiver = {1.2, 1.2, 0};
    const auto res = feasibility_check(g);
    CHECK(!res.feasible);
    REQUIRE(res.witness.has_value());
    const auto w = *res.witness;
    for (const auto& v : g.verifiers)
        CHECK(distance(v, w) <= distance(v, g.receiver) + 1e-9);
}

TEST_CASE("feasibility: vertex receiver is infeasible (grid-search oracle)") {
    auto g = Geometry::equilateral(1.0, 0.05, 1.0);
    g.receiver = g.verifiers[0];
    const auto res = feasibility_check(g);
    CHECK(!res.feasible);
    // no other point can match a zero self-chain
    CHECK(!res.witness.has_value());
}

TEST_CASE("feasibility: degenerate hull rejected") {
    Geometry g;
    g.verifiers = {{1, 1, 1}, {1, 1, 1}};
    g.receiver = {0, 0, 0};
    g.l = 0.1;
    g.c = 1.0;
    CHECK_THROWS_AS(feasibility_check(g), std::invalid_argument);
}

TEST_CASE("regular 3-D layout for N=4") {
    const auto g = Geometry::regular(4, 1.0, 0.1, 1.0);
    CHECK(g.verifiers.size() == 4);
    for (const auto& v : g.verifiers)
        CHECK(distance(v, g.receiver) == doctest::Approx(1.0));
    CHECK(feasibility_check(g).feasible);
    const auto r = cheat_completion(g);
    CHECK(r.completion <= r.deadline + 1e-12);
}

TEST_CASE("processing latency is a uniform additive option") {
    auto g = Geometry::collinear(1.0, 0.1, 1.0);
    g.processing_latency = 0.25;
    CHECK(honest_completion(g).completion == doctest::Approx(2.25));
}
