#include <doctest.h>

#include "rieszlab/interpolate.hpp"
#include "rieszlab/linalg.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/sparse_poly.hpp"
#include "rieszlab/univariate.hpp"

using namespace rieszlab;
using namespace rieszlab::exactalg;

namespace {

SparsePoly elementary_symmetric_direct(int m, int n) {
    // independent construction by subset scan, for cross checks
    auto vars = default_vars(n);
    SparsePoly p(vars);
    std::vector<int> idx(m);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == m) {
            std::vector<int> e(n, 0);
            for (int k : idx) e[k] = 1;
            p.add_term(e, Rational(1));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return p;
}

}  // namespace

TEST_CASE("rational parsing and canonical form") {
    CHECK(to_string(parse_rational("3/6")) == "1/2");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(parse_rational("0/5") == 0);
    CHECK(to_string(parse_rational("0/5")) == "0");
    CHECK_THROWS_AS(parse_rational("abc"), structural_error);
    CHECK(pow_rational(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(floor_rational(Rational(-137, 11)) == -13);
    CHECK(floor_rational(Rational(137, 11)) == 12);
}

TEST_CASE("primitive scaling") {
    RationalVector v(3);
    v << Rational(-2, 3), Rational(4, 3), Rational(0);
    RationalVector p = sign_canonical_primitive(v);
    CHECK(p[0] == 1);
    CHECK(p[1] == -2);
    CHECK(p[2] == 0);
}

TEST_CASE("poly_arith basics") {
    auto vars = default_vars(3);
    SparsePoly x1 = SparsePoly::variable(vars, 0);
    SparsePoly x2 = SparsePoly::variable(vars, 1);
    SparsePoly x3 = SparsePoly::variable(vars, 2);

    SUBCASE("product of linear forms") {
        SparsePoly p = (x1 + x2) * (x1 - x2);
        SparsePoly expect = x1 * x1 - x2 * x2;
        CHECK(p == expect);
    }
    SUBCASE("derivative of E23") {
        SparsePoly e23 = x1 * x2 + x1 * x3 + x2 * x3;
        CHECK(e23.partial_derivative(0) == x2 + x3);
    }
    SUBCASE("E35 has C(5,3) terms") {
        SparsePoly e35 = elementary_symmetric_direct(3, 5);
        CHECK(e35.term_count() == 10);
    }
    SUBCASE("mismatched variable lists") {
        SparsePoly other = SparsePoly::variable(default_vars(2), 0);
        CHECK_THROWS_AS(x1 + other, structural_error);
    }
}

TEST_CASE("evaluate") {
    auto vars = default_vars(3);
    SparsePoly e23 = elementary_symmetric_direct(2, 3);
    RationalVector ones(3);
    ones << 1, 1, 1;
    CHECK(e23.evaluate(ones) == 3);

    SparsePoly e24 = elementary_symmetric_direct(2, 4);
    RationalVector ones4(4);
    ones4 << 1, 1, 1, 1;
    CHECK(e24.evaluate(ones4) == 6);

    SparsePoly zero(vars);
    CHECK(zero.evaluate(ones) == 0);
}

TEST_CASE("poly_arith ring axioms on random instances") {
    Rng rng(20240101);
    auto vars = default_vars(3);
    auto random_poly = [&]() {
        SparsePoly p(vars);
        int terms = static_cast<int>(rng.below(5)) + 1;
        for (int t = 0; t < terms; ++t) {
            std::vector<int> e{static_cast<int>(rng.below(3)), static_cast<int>(rng.below(3)),
                               static_cast<int>(rng.below(3))};
            p.add_term(e, rng.rational_in(5, 7));
        }
        return p;
    };
    for (int iter = 0; iter < 40; ++iter) {
        SparsePoly a = random_poly(), b = random_poly(), c = random_poly();
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("differentiate-integrate identity on monomials") {
    Rng rng(7);
    auto vars = default_vars(4);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<int> e{static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4)),
                           static_cast<int>(rng.below(4)), static_cast<int>(rng.below(4))};
        SparsePoly m = SparsePoly::monomial(vars, e, rng.rational_in(9, 4));
        if (m.is_zero()) continue;
        int i = static_cast<int>(rng.below(4));
        std::vector<int> e2 = e;
        e2[i] += 1;
        SparsePoly lifted = SparsePoly::monomial(vars, e2, m.terms().begin()->second);
        SparsePoly back = Rational(1, e[i] + 1) * lifted.partial_derivative(i);
        CHECK(back == m);
    }
}

TEST_CASE("nullspace") {
    SUBCASE("identity has trivial kernel") {
        RationalMatrix I = RationalMatrix::Identity(3, 3);
        CHECK(nullspace(I).empty());
    }
    SUBCASE("2x4 example matrix") {
        RationalMatrix L(2, 4);
        L << 3, 2, 1, 0, 0, 1, 2, 3;
        auto basis = nullspace(L);
        REQUIRE(basis.size() == 2);
        for (const auto& v : basis) {
            RationalVector prod = L * v;
            CHECK(prod[0] == 0);
            CHECK(prod[1] == 0);
        }
        RationalVector v1(4), v2(4);
        v1 << 1, -2, 1, 0;
        v2 << 0, 1, -2, 1;
        CHECK(in_span(basis, v1));
        CHECK(in_span(basis, v2));
    }
    SUBCASE("rank-1 1x2") {
        RationalMatrix M(1, 2);
        M << 1, 1;
        auto basis = nullspace(M);
        REQUIRE(basis.size() == 1);
        CHECK(basis[0][0] * (-1) == basis[0][1]);
    }
}

TEST_CASE("solve and right inverse") {
    RationalMatrix L(2, 4);
    L << 3, 2, 1, 0, 0, 1, 2, 3;
    RationalMatrix S = right_inverse(L);
    RationalMatrix P = L * S;
    CHECK(P == RationalMatrix::Identity(2, 2));

    RationalVector b(2);
    b << 5, 7;
    auto x = solve(L, b);
    REQUIRE(x.has_value());
    RationalVector prod = L * *x;
    CHECK(prod[0] == 5);
    CHECK(prod[1] == 7);

    RationalMatrix A(2, 1);
    A << 1, 1;
    RationalVector c(2);
    c << 1, 2;
    CHECK(!solve(A, c).has_value());
}

TEST_CASE("determinant") {
    RationalMatrix M(3, 3);
    M << 5, 4, 4, 4, 6, 4, 4, 4, 6;
    CHECK(determinant(M) == 36);
    RationalMatrix Z = RationalMatrix::Zero(2, 2);
    CHECK(determinant(Z) == 0);
}

TEST_CASE("sturm root counting") {
    SUBCASE("t^2 - 1 has two real roots") {
        UnivariatePoly q({Rational(-1), Rational(0), Rational(1)});
        CHECK(sturm_distinct_real_roots(q) == 2);
    }
    SUBCASE("t^2 + 1 has none") {
        UnivariatePoly q({Rational(1), Rational(0), Rational(1)});
        CHECK(sturm_distinct_real_roots(q) == 0);
        CHECK(!is_real_rooted(q));
    }
    SUBCASE("(t-1)^2 (t-2): two distinct roots, real-rooted") {
        UnivariatePoly a({Rational(-1), Rational(1)});
        UnivariatePoly b({Rational(-2), Rational(1)});
        UnivariatePoly q = a * a * b;
        CHECK(sturm_distinct_real_roots(q) == 2);
        CHECK(is_real_rooted(q));
        UnivariatePoly sf = squarefree_part(q);
        CHECK(sf.degree() == 2);
    }
    SUBCASE("open intervals") {
        UnivariatePoly q({Rational(0), Rational(-1), Rational(0), Rational(1)});  // t^3 - t
        CHECK(sturm_distinct_real_roots(q) == 3);
        CHECK(sturm_distinct_real_roots(q, RootInterval::positive()) == 1);
        CHECK(sturm_distinct_real_roots(q, {Rational(-1), Rational(1)}) == 1);
        CHECK(sturm_distinct_real_roots(q, {Rational(0), std::nullopt}) == 1);
        CHECK(sturm_distinct_real_roots(q, {std::nullopt, Rational(0)}) == 1);
    }
    SUBCASE("zero polynomial is an error") {
        CHECK_THROWS_AS(sturm_distinct_real_roots(UnivariatePoly()), structural_error);
    }
    SUBCASE("corpus with known factorization") {
        Rng rng(99);
        for (int iter = 0; iter < 25; ++iter) {
            int nroots = static_cast<int>(rng.below(4));
            UnivariatePoly q({rng.rational_in(3, 3) + Rational(4)});
            std::vector<Rational> roots;
            for (int k = 0; k < nroots; ++k) {
                Rational r = rng.rational_in(6, 4);
                int mult = 1 + static_cast<int>(rng.below(2));
                for (int j = 0; j < mult; ++j)
                    q = q * UnivariatePoly({-r, Rational(1)});
                roots.push_back(r);
            }
            int extra_complex = static_cast<int>(rng.below(2));
            for (int j = 0; j < extra_complex; ++j)
                q = q * UnivariatePoly({Rational(1), Rational(0), Rational(1)});
            std::sort(roots.begin(), roots.end());
            roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
            CHECK(sturm_distinct_real_roots(q) == static_cast<int>(roots.size()));
        }
    }
}

TEST_CASE("compose_linear_univariate") {
    // p(x1,x2) = x1^2 + x2, substitute x = (2t+1, -t)
    auto vars = default_vars(2);
    SparsePoly p = SparsePoly::variable(vars, 0).pow(2) + SparsePoly::variable(vars, 1);
    RationalVector scale(2), shift(2);
    scale << 2, -1;
    shift << 1, 0;
    auto c = compose_linear_univariate(p, scale, shift);
    // (2t+1)^2 - t = 4t^2 + 3t + 1
    REQUIRE(c.size() == 3);
    CHECK(c[0] == 1);
    CHECK(c[1] == 3);
    CHECK(c[2] == 4);
}

TEST_CASE("divide_by_linear") {
    auto vars = default_vars(2);
    SparsePoly y1 = SparsePoly::variable(vars, 0);
    SparsePoly y2 = SparsePoly::variable(vars, 1);
    SparsePoly wall = Rational(-2) * y1 + y2;  // y2 - 2 y1
    SparsePoly p = wall * wall;
    RationalVector w(2);
    w << -2, 1;
    auto q = divide_by_linear(p, w);
    REQUIRE(q.has_value());
    CHECK(*q == wall);
    auto q2 = divide_by_linear(*q, w);
    REQUIRE(q2.has_value());
    CHECK(q2->coeff(std::vector<int>{0, 0}) == 1);
    CHECK(!divide_by_linear(p + y1, w).has_value());
}

TEST_CASE("interpolation") {
    SUBCASE("degree 0") {
        std::vector<std::pair<RationalVector, Rational>> samples;
        RationalVector p(2);
        p << 3, 4;
        samples.push_back({p, Rational(7, 2)});
        SparsePoly c = interpolate(0, 2, samples, false);
        CHECK(c.coeff(std::vector<int>{0, 0}) == Rational(7, 2));
    }
    SUBCASE("recover quadratic from three samples") {
        auto vars = default_vars(2, "y");
        SparsePoly target(vars);
        target.add_term({1, 1}, Rational(4));
        target.add_term({2, 0}, Rational(-1));
        target.add_term({0, 2}, Rational(-1));
        std::vector<std::pair<RationalVector, Rational>> samples;
        for (auto [a, b] : {std::pair<int, int>{1, 1}, {2, 1}, {1, 2}}) {
            RationalVector pt(2);
            pt << a, b;
            samples.push_back({pt, target.evaluate(pt)});
        }
        SparsePoly got = interpolate(2, 2, samples, true, vars);
        CHECK(got == target);
    }
    SUBCASE("roundtrip on random polynomials") {
        Rng rng(123);
        auto vars = default_vars(3, "y");
        for (int iter = 0; iter < 10; ++iter) {
            int deg = 1 + static_cast<int>(rng.below(3));
            auto basis = monomial_basis(deg, 3, true);
            SparsePoly target(vars);
            for (const auto& e : basis) target.add_term(e, rng.rational_in(5, 3));
            if (target.is_zero()) continue;
            std::vector<std::pair<RationalVector, Rational>> samples;
            for (size_t k = 0; k < basis.size() + 2; ++k) {
                RationalVector pt(3);
                pt << rng.rational_in(10, 8), rng.rational_in(10, 8), rng.rational_in(10, 8);
                samples.push_back({pt, target.evaluate(pt)});
            }
            SparsePoly got = interpolate(deg, 3, samples, true, vars);
            CHECK(got == target);
        }
    }
    SUBCASE("inconsistent samples fail loudly") {
        std::vector<std::pair<RationalVector, Rational>> samples;
        for (int k = 0; k < 3; ++k) {
            RationalVector pt(1);
            pt << k;
            samples.push_back({pt, Rational(k * k)});
        }
        CHECK_THROWS_AS(interpolate(1, 1, samples, false), interpolation_error);
    }
    SUBCASE("underdetermined fails loudly") {
        std::vector<std::pair<RationalVector, Rational>> samples;
        RationalVector pt(2);
        pt << 1, 1;
        samples.push_back({pt, Rational(1)});
        CHECK_THROWS_AS(interpolate(2, 2, samples, true), interpolation_error);
    }
}

TEST_CASE("symmetry helpers") {
    SparsePoly e23 = elementary_symmetric_direct(2, 3);
    CHECK(is_symmetric(e23));
    SparsePoly skew = e23 + SparsePoly::variable(default_vars(3), 0);
    CHECK(!is_symmetric(skew));
}
