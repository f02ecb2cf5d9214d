#include "mcmod/io.hpp"

#include "test_util.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace mcmod;
using testutil::Rng;

namespace {

RationalField Q;

Json algebra_json(const std::string& field, int bound, const std::vector<std::string>& vars,
                  const std::vector<std::string>& relations) {
    Json vs = Json::array();
    for (const auto& v : vars) vs.push_back({{"name", v}, {"degree", 1}});
    Json rs = Json::array();
    for (const auto& r : relations) rs.push_back(r);
    return Json{{"schema", "mcmod/algebra/v1"},
                {"field", field},
                {"degreeBound", bound},
                {"vars", vs},
                {"relations", rs}};
}

}  // namespace

TEST_CASE("polynomial parsing") {
    const std::vector<std::string> vars{"x", "y"};
    auto terms = parse_polynomial("x^2 + 3*x*y - y^2", vars);
    REQUIRE(terms.size() == 3);
    CHECK(terms[0].coeff == 1);
    CHECK(terms[0].exponents == std::vector<int>{2, 0});
    CHECK(terms[1].coeff == 3);
    CHECK(terms[1].exponents == std::vector<int>{1, 1});
    CHECK(terms[2].coeff == -1);
    CHECK(terms[2].exponents == std::vector<int>{0, 2});

    auto neg = parse_polynomial("-2*x", vars);
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].coeff == -2);

    CHECK_THROWS_AS(parse_polynomial("x + z", vars), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("", vars), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("x -", vars), std::invalid_argument);
    CHECK_THROWS_AS(parse_polynomial("x^0", vars), std::invalid_argument);
}

TEST_CASE("algebra descriptor round trip") {
    auto j = algebra_json("Q", 4, {"x", "y", "z"}, {"x*z - y^2"});
    auto file = parse_algebra_file(j);
    CHECK(file.field == FieldSpec::rationals());
    auto a = build_algebra(file, Q);
    CHECK(a.dim(2) == 5);
    CHECK(a.dim(4) == 9);
}

TEST_CASE("algebra descriptor is strict") {
    auto j = algebra_json("Q", 3, {"x"}, {});
    j["extra"] = 1;
    CHECK_THROWS_AS(parse_algebra_file(j), std::invalid_argument);

    auto bad_schema = algebra_json("Q", 3, {"x"}, {});
    bad_schema["schema"] = "mcmod/algebra/v9";
    CHECK_THROWS_AS(parse_algebra_file(bad_schema), std::invalid_argument);

    auto bad_field = algebra_json("GF(4)", 3, {"x"}, {});
    CHECK_THROWS_AS(parse_algebra_file(bad_field), std::invalid_argument);

    auto inhomogeneous = algebra_json("Q", 3, {"x", "y"}, {"x^2 + y"});
    CHECK_THROWS_AS(build_algebra(parse_algebra_file(inhomogeneous), Q), std::domain_error);
}

TEST_CASE("rational entries parse in both notations") {
    CHECK(parse_entry(Q, Json(3)) == BigRational(3));
    CHECK(parse_entry(Q, Json("3/4")) == BigRational(3, 4));
    CHECK(parse_entry(Q, Json("-7")) == BigRational(-7));
    CHECK_THROWS_AS(parse_entry(Q, Json("x")), std::invalid_argument);
    CHECK_THROWS_AS(parse_entry(Q, Json("1/0")), std::invalid_argument);
    PrimeField f5(5);
    CHECK(parse_entry(f5, Json(7)) == 2);
    CHECK(parse_entry(f5, Json("-1")) == 4);
}

TEST_CASE("cochain JSON round trip over both fields") {
    Rng rng(3);
    auto alg = testutil::poly(Q, {"x", "y"}, 2);
    DimensionVector dims(0, {1, 2, 1});
    for (int degree = 0; degree <= 2; ++degree) {
        auto x = testutil::random_cochain(alg, dims, degree, rng);
        auto parsed = parse_cochain(cochain_to_json(x), alg);
        CHECK(parsed == x);
    }

    PrimeField f5(5);
    auto alg5 = testutil::poly(f5, {"x", "y"}, 2);
    for (int degree = 0; degree <= 2; ++degree) {
        auto x = testutil::random_cochain(alg5, dims, degree, rng);
        auto parsed = parse_cochain(cochain_to_json(x), alg5);
        CHECK(parsed == x);
    }
}

TEST_CASE("cochain parsing is strict") {
    auto alg = testutil::poly(Q, {"x", "y"}, 1);
    Json base = {
        {"schema", "mcmod/cochain/v1"},
        {"field", "Q"},
        {"window", {0, 1}},
        {"dims", {1, 1}},
        {"degree", 1},
        {"components",
         Json::array({Json{{"source", 0},
                           {"composition", {1}},
                           {"basis", {0}},
                           {"entries", Json::array({Json::array({1})})}}})},
    };
    CHECK_NOTHROW(parse_cochain(base, alg));

    auto unknown = base;
    unknown["mystery"] = true;
    CHECK_THROWS_AS(parse_cochain(unknown, alg), std::invalid_argument);

    auto bad_field = base;
    bad_field["field"] = "Fp:5";
    CHECK_THROWS_AS(parse_cochain(bad_field, alg), std::invalid_argument);

    auto bad_shape = base;
    bad_shape["components"][0]["entries"] = Json::array({Json::array({1, 2})});
    CHECK_THROWS_AS(parse_cochain(bad_shape, alg), std::invalid_argument);

    auto bad_basis = base;
    bad_basis["components"][0]["basis"] = {7};
    CHECK_THROWS_AS(parse_cochain(bad_basis, alg), std::invalid_argument);

    auto bad_label = base;
    bad_label["components"][0]["basisLabels"] = {"y"};  // index 0 is "x"
    CHECK_THROWS_AS(parse_cochain(bad_label, alg), std::invalid_argument);

    auto bad_block = base;
    bad_block["components"][0]["source"] = 1;  // no degree-1 block starting at the top
    CHECK_THROWS_AS(parse_cochain(bad_block, alg), std::out_of_range);
}

TEST_CASE("module points survive serialization with their verdicts intact") {
    auto alg = testutil::poly(Q, {"x", "y"}, 2);
    auto split = direct_sum(tautological_module(alg, 0, 2), shifted_tautological_module(alg, 0, 2, 2));
    auto parsed = parse_cochain(cochain_to_json(split), alg);
    auto verdict = check_stability(parsed, extremal_character(parsed.dims()), {2});
    CHECK(verdict.status == StabilityStatus::Unstable);
    CHECK(verdict.exact_rational);
}

TEST_CASE("report serializers emit the documented shapes") {
    auto alg = testutil::poly(Q, {"x", "y"}, 1);
    auto mu = tautological_module(alg, 0, 1);
    auto report = tangent_cohomology(mu);
    auto j = cohomology_to_json(report);
    CHECK(j.contains("dims"));
    CHECK(j.contains("eulerCharacteristic"));
    CHECK(j["augmented"].get<bool>());

    auto ideal = mc_ideal(alg, DimensionVector(0, {1, 1}));
    auto ij = mc_ideal_to_json(ideal);
    CHECK(ij["generatorCount"].get<int>() == 0);  // window of length one

    auto pres = build_dg_presentation(alg, DimensionVector(0, {1, 1}));
    auto pj = presentation_to_json(pres);
    CHECK(pj["generators"].is_array());
}
