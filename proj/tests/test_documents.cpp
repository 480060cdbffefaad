#include <doctest.h>

#include "rieszlab/documents.hpp"

using namespace rieszlab;
using namespace rieszlab::docs;

TEST_CASE("rational and matrix round trips") {
    CHECK(rational_from_json(rational_to_json(Rational(-7, 3))) == Rational(-7, 3));
    CHECK(rational_from_json(json(5)) == 5);

    RationalMatrix M(2, 3);
    M << 1, Rational(1, 2), 0, -3, 2, Rational(7, 5);
    RationalMatrix back = matrix_from_json(matrix_to_json(M));
    CHECK(back == M);

    CHECK_THROWS_AS(matrix_from_json(json{{"rows", 2}, {"cols", 2}, {"entries", {"1"}}}),
                    parse_error);
}

TEST_CASE("polynomial round trip") {
    exactalg::SparsePoly p(exactalg::default_vars(3));
    p.add_term({2, 0, 1}, Rational(-5, 3));
    p.add_term({0, 0, 0}, Rational(7));
    CHECK(poly_from_json(poly_to_json(p)) == p);
}

TEST_CASE("problem validation") {
    json good{{"kind", "named_polynomial"}, {"name", "e23"}, {"s", "-5/11"}};
    ProblemSpec spec = problem_from_json(good);
    CHECK(spec.name == "e23");
    CHECK(*spec.s == Rational(-5, 11));

    CHECK_THROWS_AS(problem_from_json(json{{"kind", "bogus"}}), parse_error);
    // two payloads at once
    json two{{"kind", "linear_forms"},
             {"name", "e23"},
             {"linear_forms", {{"rows", 1}, {"cols", 1}, {"entries", {"1"}}}}};
    CHECK_THROWS_AS(problem_from_json(two), parse_error);
    // alpha length mismatch
    json mism{{"kind", "linear_forms"},
              {"linear_forms", {{"rows", 1}, {"cols", 2}, {"entries", {"1", "2"}}}},
              {"alpha", {"1"}}};
    CHECK_THROWS_AS(problem_from_json(mism), parse_error);
}

TEST_CASE("config block and defaults") {
    json j{{"kind", "named_polynomial"},
           {"name", "e24"},
           {"alpha", "2"},
           {"config", {{"samples", 5000}, {"seed", 9}, {"tol", 0.001}, {"max_order", 4}}}};
    ProblemSpec spec = problem_from_json(j);
    CHECK(spec.quad.samples == 5000);
    CHECK(spec.quad.seed == 9);
    CHECK(spec.quad.rel_tol == 0.001);
    CHECK(spec.max_order == 4);
    CHECK(*spec.s == Rational(-2));  // scalar alpha becomes the power
}

TEST_CASE("float formatting is stable") {
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    CHECK(format_double(-0.039756428685) == "-0.039756428685");
    CHECK(format_double(0.0) == "0");
}
