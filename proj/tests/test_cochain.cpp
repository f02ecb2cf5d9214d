#include "mcmod/cochain.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mcmod;
using testutil::Rng;

namespace {

RationalField Q;

// C[x] truncated at degree 2, window [0,2], alpha = (1,1,1); L^1 coordinates
// are u = mu(x)|_0, v = mu(x)|_1, w = mu(x^2)|_0.
struct UvwFixture {
    std::shared_ptr<const GradedAlgebra<RationalField>> alg = testutil::poly(Q, {"x"}, 2);
    DimensionVector dims{0, {1, 1, 1}};

    ModulePoint<RationalField> point(long long u, long long v, long long w) const {
        ModulePoint<RationalField> mu(alg, dims, 1);
        mu.component(0, {1}).mats[0].at(0, 0) = Q.from_long(u);
        mu.component(1, {1}).mats[0].at(0, 0) = Q.from_long(v);
        mu.component(0, {2}).mats[0].at(0, 0) = Q.from_long(w);
        return mu;
    }
};

}  // namespace

TEST_CASE("l_dimension matches the block formula and the layout") {
    auto axy = testutil::poly(Q, {"x", "y"}, 2);

    CHECK(l_dimension(*axy, DimensionVector(0, {1, 1}), 1) == 2);
    CHECK(l_dimension(*axy, DimensionVector(0, {1, 1, 1}), 2) == 4);
    CHECK(l_dimension(*axy, DimensionVector(0, {1, 1}), 5) == 0);  // n > q-p

    for (int n = 0; n <= 3; ++n) {
        DimensionVector dims(0, {1, 2, 1});
        CHECK(l_dimension(*axy, dims, n) ==
              static_cast<long long>(l_layout(*axy, dims, n).total));
    }
    CHECK(l_dimension(*axy, DimensionVector(0, {2, 3}), 0) == 13);  // End_gr V
}

TEST_CASE("differential of a degree-0 cochain is zero") {
    UvwFixture fx;
    Rng rng(3);
    for (int i = 0; i < 5; ++i) {
        auto y = testutil::random_cochain(fx.alg, fx.dims, 0, rng);
        CHECK(differential(y).is_zero());
    }
}

TEST_CASE("differential of a module point evaluates products") {
    UvwFixture fx;
    auto mu = fx.point(2, 3, 5);
    auto d = differential(mu);
    // d mu (x, x) = mu(x^2) = w
    CHECK(d.component(0, {1, 1}).mats[0].at(0, 0) == Q.from_long(5));
    CHECK(differential(ModulePoint<RationalField>(fx.alg, fx.dims, 1)).is_zero());
}

TEST_CASE("bracket of two degree-1 cochains matches the displayed formula") {
    UvwFixture fx;
    Rng rng(5);
    auto x = testutil::random_cochain(fx.alg, fx.dims, 1, rng);
    auto y = testutil::random_cochain(fx.alg, fx.dims, 1, rng);
    auto b = bracket(x, y);
    // [x,y](a,b) = -x(a) y(b) - y(a) x(b) on the (j=0, (1,1)) component
    auto expected = x.component(1, {1}).mats[0].mul(y.component(0, {1}).mats[0]).negate().sub(
        y.component(1, {1}).mats[0].mul(x.component(0, {1}).mats[0]));
    CHECK(b.component(0, {1, 1}).mats[0] == expected);

    // [x,x] = 2 (x o x)
    auto xx = bracket(x, x);
    auto cx = compose(x, x);
    CHECK(xx == cx.scale(Q.from_long(2)));

    // [x, 0] = 0
    Cochain<RationalField> zero(fx.alg, fx.dims, 1);
    CHECK(bracket(x, zero).is_zero());
}

TEST_CASE("mc_residual on the u,v,w fixture is w - v u") {
    UvwFixture fx;
    auto mu = fx.point(2, 3, 7);
    auto res = mc_residual(mu);
    CHECK(res.component(0, {1, 1}).mats[0].at(0, 0) == Q.from_long(7 - 6));
    CHECK_FALSE(is_module(mu));
    CHECK(is_module(fx.point(2, 3, 6)));

    // zero point is a module
    CHECK(is_module(ModulePoint<RationalField>(fx.alg, fx.dims, 1)));
}

TEST_CASE("windows of length one have no residual") {
    auto alg = testutil::poly(Q, {"x", "y"}, 1);
    DimensionVector dims(0, {2, 3});
    Rng rng(7);
    for (int i = 0; i < 5; ++i) {
        auto mu = testutil::random_cochain(alg, dims, 1, rng);
        CHECK(mc_residual(mu).is_zero());
        CHECK(is_module(mu));
    }
}

TEST_CASE("the tautological window module is a module") {
    auto alg = testutil::poly(Q, {"x", "y"}, 3);
    for (int p = 0; p <= 1; ++p) {
        auto mu = tautological_module(alg, p, 3);
        CHECK(is_module(mu));
    }
    auto shifted = shifted_tautological_module(alg, 0, 2, 2);
    CHECK(is_module(shifted));
    CHECK(shifted.dims().at(0) == 0);
    CHECK(shifted.dims().at(2) == 1);
}

TEST_CASE("mc_residual equals the formula-level curvature") {
    // Oracle form: d mu + mu o mu, assembled from the generic operations.
    auto alg = testutil::poly(Q, {"x", "y"}, 2);
    DimensionVector dims(0, {1, 2, 1});
    Rng rng(11);
    for (int i = 0; i < 10; ++i) {
        auto mu = testutil::random_cochain(alg, dims, 1, rng);
        auto direct = mc_residual(mu);
        auto formula = differential(mu).add(compose(mu, mu));
        CHECK(direct == formula);
    }
}

TEST_CASE("gauge action: scalars act trivially, lambda_0 scales by t^{i-j}") {
    UvwFixture fx;
    auto mu = fx.point(2, 3, 5);

    auto scal = GaugeElement<RationalField>::scalar(Q, fx.dims, Q.from_long(7));
    CHECK(gauge_act(scal, mu) == mu);

    auto id = GaugeElement<RationalField>::identity(Q, fx.dims);
    CHECK(gauge_act(id, mu) == mu);

    auto lam = GaugeElement<RationalField>::one_parameter(Q, fx.dims, Q.from_long(2));
    auto acted = gauge_act(lam, mu);
    CHECK(acted.component(0, {1}).mats[0].at(0, 0) == Q.from_long(4));   // t^{1-0} * 2
    CHECK(acted.component(1, {1}).mats[0].at(0, 0) == Q.from_long(6));   // t^{2-1} * 3
    CHECK(acted.component(0, {2}).mats[0].at(0, 0) == Q.from_long(20));  // t^{2-0} * 5
}

TEST_CASE("gauge blocks must be invertible") {
    UvwFixture fx;
    std::vector<Matrix<RationalField>> blocks{Matrix<RationalField>(Q, 1, 1),
                                              Matrix<RationalField>::identity(Q, 1),
                                              Matrix<RationalField>::identity(Q, 1)};
    CHECK_THROWS_AS(GaugeElement<RationalField>(fx.dims, std::move(blocks)), std::domain_error);
}

TEST_CASE("twisted differential reduces to d at the origin and squares to the residual bracket") {
    auto alg = testutil::poly(Q, {"x", "y"}, 2);
    DimensionVector dims(0, {1, 2, 1});
    Rng rng(13);
    ModulePoint<RationalField> zero(alg, dims, 1);
    for (int i = 0; i < 6; ++i) {
        auto y = testutil::random_cochain(alg, dims, 1, rng);
        CHECK(twisted_differential(zero, y) == differential(y));

        auto mu = testutil::random_cochain(alg, dims, 1, rng);  // generically not MC
        auto twice = twisted_differential(mu, twisted_differential(mu, y));
        CHECK(twice == bracket(mc_residual(mu), y));
    }
}

TEST_CASE("dgla identities hold exactly on random cochains") {
    Rng rng(17);
    auto run = [&](auto field) {
        using F = decltype(field);
        auto alg = testutil::poly(field, {"x", "y"}, 2);
        DimensionVector dims(0, {1, 2, 1});
        std::shared_ptr<const GradedAlgebra<F>> a = alg;
        for (int i = 0; i < 8; ++i) {
            auto x = testutil::random_cochain(a, dims, 1, rng);
            auto y = testutil::random_cochain(a, dims, 1, rng);
            auto z = testutil::random_cochain(a, dims, 2, rng);
            auto mu = testutil::random_cochain(a, dims, 1, rng);
            auto g = testutil::random_gauge(field, dims, rng);

            CHECK(differential(differential(x)).is_zero());

            // graded Jacobi: [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
            auto lhs = bracket(x, bracket(y, z));
            auto rhs = bracket(bracket(x, y), z).sub(bracket(y, bracket(x, z)));
            CHECK(lhs == rhs);

            // Leibniz: d[x,z] = [dx,z] + (-1)^{|x|} [x,dz]
            auto dl = differential(bracket(x, z));
            auto dr = bracket(differential(x), z).sub(bracket(x, differential(z)));
            CHECK(dl == dr);

            // gauge equivariance
            CHECK(differential(gauge_act(g, x)) == gauge_act(g, differential(x)));
            CHECK(gauge_act(g, bracket(x, y)) == bracket(gauge_act(g, x), gauge_act(g, y)));
            CHECK(mc_residual(gauge_act(g, mu)) == gauge_act(g, mc_residual(mu)));
        }
    };
    run(RationalField{});
    run(PrimeField{101});
}

TEST_CASE("graded antisymmetry of the bracket") {
    Rng rng(19);
    auto alg = testutil::poly(Q, {"x"}, 3);
    DimensionVector dims(0, {1, 1, 1, 1});
    for (int dx = 0; dx <= 2; ++dx)
        for (int dy = 0; dy <= 2; ++dy) {
            auto x = testutil::random_cochain(alg, dims, dx, rng);
            auto y = testutil::random_cochain(alg, dims, dy, rng);
            auto xy = bracket(x, y);
            auto yx = bracket(y, x);
            const bool odd = (dx % 2) && (dy % 2);
            CHECK(xy == (odd ? yx : yx.scale(Q.from_long(-1))));
        }
}

// Exhaustive over F_2: the Maurer-Cartan locus equals the set of associative
// actions judged by the basis-pair oracle, point for point.
TEST_CASE("MC locus = associative actions, exhaustively over F_2") {
    PrimeField f2(2);
    auto alg = testutil::poly(f2, {"x", "y"}, 2);
    DimensionVector dims(0, {1, 1, 1});
    const auto layout = l_layout(*alg, dims, 1);
    REQUIRE(layout.total == 7);

    int mc_count = 0;
    for (std::size_t code = 0; code < (1u << layout.total); ++code) {
        std::vector<PrimeField::Element> coords(layout.total);
        for (std::size_t b = 0; b < layout.total; ++b) coords[b] = (code >> b) & 1u;
        auto mu = unflatten(alg, dims, 1, coords);

        // independent oracle: check mu(ab) = mu(a) mu(b) on all basis pairs
        bool oracle_ok = true;
        for (int d1 = 1; d1 <= 2; ++d1)
            for (int d2 = 1; d1 + d2 <= 2; ++d2)
                for (int j = 0; j + d1 + d2 <= 2; ++j)
                    for (int t1 = 0; t1 < alg->dim(d1); ++t1)
                        for (int t2 = 0; t2 < alg->dim(d2); ++t2) {
                            const auto& prod = alg->product_basis(d1, t1, d2, t2);
                            Matrix<PrimeField> lhs(f2, 1, 1);
                            for (int s = 0; s < alg->dim(d1 + d2); ++s)
                                if (!f2.is_zero(prod[static_cast<std::size_t>(s)]))
                                    lhs = lhs.add(mu.component(j, {d1 + d2})
                                                      .mats[static_cast<std::size_t>(s)]
                                                      .scale(prod[static_cast<std::size_t>(s)]));
                            auto rhs = mu.component(j + d2, {d1})
                                           .mats[static_cast<std::size_t>(t1)]
                                           .mul(mu.component(j, {d2}).mats[static_cast<std::size_t>(t2)]);
                            if (!(lhs == rhs)) oracle_ok = false;
                        }

        CHECK(is_module(mu) == oracle_ok);
        if (is_module(mu)) ++mc_count;
    }
    CHECK(mc_count == 10);  // frozen from the oracle run
}

TEST_CASE("direct sums and truncations") {
    auto alg = testutil::poly(Q, {"x", "y"}, 2);
    auto taut = tautological_module(alg, 0, 2);          // alpha = (1,2,3)
    auto shifted = shifted_tautological_module(alg, 0, 2, 2);  // alpha = (0,0,1)
    auto sum = direct_sum(taut, shifted);
    CHECK(sum.dims() == DimensionVector(0, {1, 2, 4}));
    CHECK(is_module(sum));

    // truncating the tautological module gives the smaller tautological module
    auto trunc = truncate_module(taut, 1);
    auto small = tautological_module(alg, 1, 2);
    CHECK(trunc == small);
    CHECK(truncate_module(taut, 0) == taut);
    CHECK_THROWS_AS(truncate_module(taut, 3), std::invalid_argument);

    // truncation of a direct sum = direct sum of truncations
    CHECK(truncate_module(sum, 1) == direct_sum(truncate_module(taut, 1), truncate_module(shifted, 1)));

    // truncation commutes with the gauge action on the surviving blocks
    Rng rng(23);
    auto g = testutil::random_gauge(Q, sum.dims(), rng);
    std::vector<Matrix<RationalField>> sub_blocks;
    for (int j = 1; j <= 2; ++j) sub_blocks.push_back(g.block(j));
    GaugeElement<RationalField> g_trunc(truncate_module(sum, 1).dims(), std::move(sub_blocks));
    CHECK(truncate_module(gauge_act(g, sum), 1) == gauge_act(g_trunc, truncate_module(sum, 1)));
}

TEST_CASE("windows longer than the degree bound are rejected") {
    auto alg = testutil::poly(Q, {"x"}, 2);
    DimensionVector dims(0, {1, 1, 1, 1});  // window length 3 > bound 2
    CHECK_THROWS_AS(l_dimension(*alg, dims, 1), std::invalid_argument);
    CHECK_THROWS_AS((Cochain<RationalField>(alg, dims, 1)), std::invalid_argument);
}
