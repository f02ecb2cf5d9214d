#include "mcmod/fields.hpp"
#include "mcmod/matrix.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mcmod;
using testutil::Rng;

TEST_CASE("field specs parse and validate") {
    CHECK(FieldSpec::parse("Q") == FieldSpec::rationals());
    CHECK(FieldSpec::parse("Fp:101").p == 101u);
    CHECK_THROWS_AS(FieldSpec::prime(4), std::domain_error);
    CHECK_THROWS_AS(FieldSpec::parse("Fp:91"), std::domain_error);  // 7*13
    CHECK_THROWS_AS(FieldSpec::parse("R"), std::invalid_argument);
    CHECK(FieldSpec::prime(2).str() == "Fp:2");
}

TEST_CASE("prime field arithmetic") {
    PrimeField f7(7);
    CHECK(f7.add(5, 4) == 2);
    CHECK(f7.sub(2, 5) == 4);
    CHECK(f7.mul(3, 5) == 1);
    CHECK(f7.inv(3) == 5);
    CHECK(f7.from_long(-1) == 6);
    CHECK_THROWS_AS(f7.inv(0), std::domain_error);
    for (std::uint64_t a = 1; a < 7; ++a) CHECK(f7.mul(a, f7.inv(a)) == 1);
}

TEST_CASE("rref identity and zero cases") {
    RationalField q;
    auto id = Matrix<RationalField>::identity(q, 2);
    auto r = rref(id);
    CHECK(r.mat == id);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});

    Matrix<RationalField> z(q, 3, 3);
    auto rz = rref(z);
    CHECK(rz.mat == z);
    CHECK(rz.pivots.empty());
}

TEST_CASE("rref of a rank-one matrix") {
    RationalField q;
    auto m = Matrix<RationalField>::from_rows(q, 2,
                                              {{q.from_long(1), q.from_long(2)},
                                               {q.from_long(2), q.from_long(4)}});
    auto r = rref(m);
    auto expected = Matrix<RationalField>::from_rows(
        q, 2, {{q.from_long(1), q.from_long(2)}, {q.from_long(0), q.from_long(0)}});
    CHECK(r.mat == expected);
    CHECK(r.pivots == std::vector<std::size_t>{0});
}

TEST_CASE("kernel basis on hand-checked cases") {
    RationalField q;
    CHECK(kernel_basis(Matrix<RationalField>::identity(q, 3)).rows() == 0);

    Matrix<RationalField> z(q, 2, 3);
    auto kz = kernel_basis(z);
    CHECK(kz.rows() == 3);
    CHECK(kz == Matrix<RationalField>::identity(q, 3));

    PrimeField f2(2);
    auto m = Matrix<PrimeField>::from_rows(f2, 2, {{1, 1}});
    auto k = kernel_basis(m);
    REQUIRE(k.rows() == 1);
    CHECK(k.at(0, 0) == 1);
    CHECK(k.at(0, 1) == 1);
}

TEST_CASE("rref is idempotent") {
    Rng rng(7);
    RationalField q;
    PrimeField f5(5);
    for (int i = 0; i < 50; ++i) {
        auto m = testutil::random_matrix(q, 1 + i % 5, 1 + (i * 3) % 6, rng);
        auto r1 = rref(m).mat;
        CHECK(rref(r1).mat == r1);
        auto mp = testutil::random_matrix(f5, 1 + i % 5, 1 + (i * 3) % 6, rng);
        auto r2 = rref(mp).mat;
        CHECK(rref(r2).mat == r2);
    }
}

TEST_CASE("rank-nullity on random matrices over both fields") {
    Rng rng(11);
    RationalField q;
    PrimeField f101(101);
    for (int i = 0; i < 200; ++i) {
        const std::size_t rows = 1 + static_cast<std::size_t>(i) % 6;
        const std::size_t cols = 1 + static_cast<std::size_t>(i * 5) % 7;
        auto m = testutil::random_matrix(q, rows, cols, rng);
        CHECK(rank(m) + kernel_basis(m).rows() == cols);
        auto mp = testutil::random_matrix(f101, rows, cols, rng);
        CHECK(rank(mp) + kernel_basis(mp).rows() == cols);
    }
}

TEST_CASE("kernel vectors actually lie in the kernel") {
    Rng rng(13);
    RationalField q;
    for (int i = 0; i < 40; ++i) {
        auto m = testutil::random_matrix(q, 3, 5, rng);
        auto k = kernel_basis(m);
        for (std::size_t v = 0; v < k.rows(); ++v) {
            auto img = m.apply(k.row(v));
            for (const auto& e : img) CHECK(q.is_zero(e));
        }
    }
}

// Exhaustive agreement with a brute-force kernel over small prime fields.
TEST_CASE("kernel agrees with exhaustive enumeration over F_p") {
    Rng rng(17);
    for (std::uint32_t p : {2u, 3u}) {
        PrimeField f(p);
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t cols = 2 + static_cast<std::size_t>(trial) % 7;
            const std::size_t rows = 1 + static_cast<std::size_t>(trial) % 3;
            auto m = testutil::random_matrix(f, rows, cols, rng);

            std::size_t brute_count = 0;
            std::size_t total = 1;
            for (std::size_t c = 0; c < cols; ++c) total *= p;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<PrimeField::Element> v(cols);
                std::size_t rest = code;
                for (std::size_t c = 0; c < cols; ++c) {
                    v[c] = rest % p;
                    rest /= p;
                }
                bool in_kernel = true;
                for (const auto& e : m.apply(v))
                    if (!f.is_zero(e)) in_kernel = false;
                if (in_kernel) ++brute_count;
            }
            std::size_t dim = kernel_basis(m).rows();
            std::size_t expect = 1;
            for (std::size_t i = 0; i < dim; ++i) expect *= p;
            CHECK(brute_count == expect);
        }
    }
}

TEST_CASE("inverse round-trips and rejects singular input") {
    Rng rng(23);
    RationalField q;
    for (int i = 0; i < 20; ++i) {
        auto m = testutil::random_invertible(q, 3, rng);
        CHECK(m.mul(inverse(m)) == Matrix<RationalField>::identity(q, 3));
    }
    auto sing = Matrix<RationalField>::from_rows(
        q, 2, {{q.from_long(1), q.from_long(2)}, {q.from_long(2), q.from_long(4)}});
    CHECK_THROWS_AS(inverse(sing), std::domain_error);
}

TEST_CASE("row space containment") {
    RationalField q;
    auto space = row_space(Matrix<RationalField>::from_rows(
        q, 3, {{q.from_long(1), q.from_long(0), q.from_long(1)},
               {q.from_long(0), q.from_long(1), q.from_long(1)}}));
    auto in = Matrix<RationalField>::from_rows(q, 3, {{q.from_long(1), q.from_long(1), q.from_long(2)}});
    auto out = Matrix<RationalField>::from_rows(q, 3, {{q.from_long(1), q.from_long(1), q.from_long(0)}});
    CHECK(row_space_contains(space, in));
    CHECK_FALSE(row_space_contains(space, out));
}
