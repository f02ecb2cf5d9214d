#include "mcmod/scan.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mcmod;

TEST_CASE("scan counts agree across worker counts") {
    PrimeField f3(3);
    auto alg = testutil::poly(f3, {"x", "y"}, 2);
    DimensionVector dims(0, {1, 1, 1});
    ScanOptions one;
    one.threads = 1;
    ScanOptions three;
    three.threads = 3;
    auto a = scan_mc(alg, dims, one);
    auto b = scan_mc(alg, dims, three);
    CHECK(a.mc_count_residual == b.mc_count_residual);
    CHECK(a.mc_count_ideal == b.mc_count_ideal);
    CHECK(a.agree);
    CHECK(b.agree);
    CHECK(a.total_points == 2187);  // 3^7
}

TEST_CASE("window of length one: every point is a module point") {
    PrimeField f3(3);
    auto alg = testutil::poly(f3, {"x"}, 1);
    auto report = scan_mc(alg, DimensionVector(0, {1, 1}));
    CHECK(report.total_points == 3);  // p^(dim L^1)
    CHECK(report.mc_count_residual == 3);
    CHECK(report.agree);
}

TEST_CASE("orbit count distinguishes the zero and unit actions") {
    // F_3[x] on [0,1], alpha = (1,1): three points, the two invertible ones
    // are conjugate, the zero one is alone
    PrimeField f3(3);
    auto alg = testutil::poly(f3, {"x"}, 1);
    ScanOptions options;
    options.orbits = true;
    auto report = scan_mc(alg, DimensionVector(0, {1, 1}), options);
    REQUIRE(report.orbit_count.has_value());
    CHECK(*report.orbit_count == 2);
}

TEST_CASE("orbits on the univariate window match the hand count") {
    PrimeField f2(2);
    auto alg = testutil::poly(f2, {"x"}, 2);
    ScanOptions options;
    options.orbits = true;
    auto report = scan_mc(alg, DimensionVector(0, {1, 1, 1}), options);
    CHECK(report.mc_count_residual == 4);
    REQUIRE(report.orbit_count.has_value());
    CHECK(*report.orbit_count == 4);  // |G| = 1, so orbits = points
}

TEST_CASE("budgets are enforced") {
    PrimeField f5(5);
    auto alg = testutil::poly(f5, {"x", "y"}, 2);
    ScanOptions tight;
    tight.point_budget = 100;
    CHECK_THROWS_AS(scan_mc(alg, DimensionVector(0, {1, 1, 1}), tight), std::domain_error);

    auto alg2 = testutil::poly(f5, {"x"}, 1);
    ScanOptions tiny_group;
    tiny_group.orbits = true;
    tiny_group.group_budget = 3;
    CHECK_THROWS_AS(scan_mc(alg2, DimensionVector(0, {1, 2}), tiny_group), std::domain_error);
}
