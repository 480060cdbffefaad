#include <doctest.h>

#include "rieszlab/convalg.hpp"
#include "rieszlab/rng.hpp"

using namespace rieszlab;
using namespace rieszlab::convalg;

namespace {

RationalMatrix ex33_matrix() {
    RationalMatrix L(3, 5);
    L << 1, 1, 1, 1, 1, 0, 1, 2, 1, 0, 0, 0, 1, 2, 1;
    return L;
}

RationalMatrix ex36_matrix() {
    RationalMatrix L(2, 4);
    L << 3, 2, 1, 0, 0, 1, 2, 3;
    return L;
}

SparsePoly zpoly(int m, std::initializer_list<std::pair<std::vector<int>, long>> terms) {
    SparsePoly p(exactalg::default_vars(m, "z"));
    for (const auto& [e, c] : terms) p.add_term(e, Rational(c));
    return p;
}

}  // namespace

TEST_CASE("circuits of the example matrices") {
    SUBCASE("identity has none") {
        CHECK(circuits(RationalMatrix::Identity(4, 4)).empty());
    }
    SUBCASE("2x4 matrix") {
        auto cs = circuits(ex36_matrix());
        bool found123 = false, found234 = false;
        for (const auto& c : cs) {
            if (c.support == std::vector<int>{0, 1, 2}) {
                found123 = true;
                CHECK(c.coefficients == std::vector<Rational>{1, -2, 1});
            }
            if (c.support == std::vector<int>{1, 2, 3}) {
                found234 = true;
                CHECK(c.coefficients == std::vector<Rational>{1, -2, 1});
            }
        }
        CHECK(found123);
        CHECK(found234);
    }
    SUBCASE("3x5 matrix has exactly five circuits of support size 4") {
        auto cs = circuits(ex33_matrix());
        REQUIRE(cs.size() == 5);
        for (const auto& c : cs) CHECK(c.support.size() == 4);
    }
}

TEST_CASE("circuit invariants") {
    Rng rng(606);
    for (int iter = 0; iter < 8; ++iter) {
        RationalMatrix L(3, 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j) L(i, j) = rng.int_in(-3, 3);
        auto cs = circuits(L);
        for (const auto& c : cs) {
            // exact dependence
            RationalVector combo = RationalVector::Zero(3);
            for (size_t i = 0; i < c.support.size(); ++i)
                combo += c.coefficients[i] * L.col(c.support[i]);
            for (int r = 0; r < 3; ++r) CHECK(combo[r] == 0);
            // every proper subset independent
            for (size_t drop = 0; drop < c.support.size(); ++drop) {
                RationalMatrix sub(3, c.support.size() - 1);
                int col = 0;
                for (size_t i = 0; i < c.support.size(); ++i) {
                    if (i == drop) continue;
                    sub.col(col++) = L.col(c.support[i]);
                }
                CHECK(exactalg::rank(sub) == static_cast<int>(c.support.size()) - 1);
            }
            // sign normalization
            CHECK(c.coefficients[0] > 0);
        }
    }
}

TEST_CASE("circuit polynomials") {
    SUBCASE("stated cubic for the (-2,3,-2,1) dependence") {
        Circuit c;
        c.support = {0, 1, 2, 3};
        c.coefficients = {Rational(2), Rational(-3), Rational(2), Rational(-1)};
        SparsePoly got = circuit_polynomial(c, 5);
        SparsePoly expect = zpoly(5, {{{1, 1, 1, 0, 0}, 1},
                                      {{1, 1, 0, 1, 0}, -2},
                                      {{1, 0, 1, 1, 0}, 3},
                                      {{0, 1, 1, 1, 0}, -2}});
        CHECK(got == expect);
    }
    SUBCASE("size-3 circuit") {
        Circuit c;
        c.support = {0, 1, 2};
        c.coefficients = {Rational(1), Rational(-2), Rational(1)};
        SparsePoly got = circuit_polynomial(c, 4);
        SparsePoly expect = zpoly(4, {{{0, 1, 1, 0}, 1}, {{1, 0, 1, 0}, -2}, {{1, 1, 0, 0}, 1}});
        CHECK(got == expect);
    }
    SUBCASE("parallel columns") {
        Circuit c;
        c.support = {0, 1};
        c.coefficients = {Rational(1), Rational(-3)};
        SparsePoly got = circuit_polynomial(c, 2);
        // z2 - 3 z1 normalized to leading-term-positive
        SparsePoly expect = zpoly(2, {{{0, 1}, -1}, {{1, 0}, 3}});
        CHECK(got == expect);
    }
}

TEST_CASE("Orlik-Terao generators of the 3x5 matrix are the five cubics") {
    auto gens = orlik_terao_generators(ex33_matrix());
    REQUIRE(gens.size() == 5);
    std::vector<SparsePoly> expected{
        zpoly(5, {{{1, 1, 1, 0, 0}, 1}, {{1, 1, 0, 1, 0}, -2}, {{1, 0, 1, 1, 0}, 3},
                  {{0, 1, 1, 1, 0}, -2}}),
        zpoly(5, {{{1, 1, 1, 0, 0}, 1}, {{1, 1, 0, 0, 1}, -1}, {{1, 0, 1, 0, 1}, 2},
                  {{0, 1, 1, 0, 1}, -2}}),
        zpoly(5, {{{1, 1, 0, 1, 0}, 2}, {{1, 1, 0, 0, 1}, -1}, {{1, 0, 0, 1, 1}, 1},
                  {{0, 1, 0, 1, 1}, -2}}),
        zpoly(5, {{{1, 0, 1, 1, 0}, 3}, {{1, 0, 1, 0, 1}, -2}, {{1, 0, 0, 1, 1}, 1},
                  {{0, 0, 1, 1, 1}, -2}}),
        zpoly(5, {{{0, 1, 1, 1, 0}, 1}, {{0, 1, 1, 0, 1}, -1}, {{0, 1, 0, 1, 1}, 1},
                  {{0, 0, 1, 1, 1}, -1}})};
    for (const auto& e : expected) {
        bool found = false;
        for (const auto& g : gens)
            if (g == e) found = true;
        CHECK(found);
    }
}

TEST_CASE("generic 2x3 matrix has one generator with 3 terms") {
    RationalMatrix L(2, 3);
    L << 1, 0, 1, 0, 1, 1;
    auto gens = orlik_terao_generators(L);
    REQUIRE(gens.size() == 1);
    CHECK(gens[0].term_count() == 3);
}

TEST_CASE("substitution identity: z_i -> 1/l_i(x) kills every generator") {
    Rng rng(909);
    for (const RationalMatrix& L : {ex33_matrix(), ex36_matrix()}) {
        auto cs = circuits(L);
        const int n = static_cast<int>(L.rows());
        const int m = static_cast<int>(L.cols());
        for (int iter = 0; iter < 20; ++iter) {
            RationalVector x(n);
            for (int i = 0; i < n; ++i) x[i] = Rational(rng.int_in(1, 20), rng.int_in(1, 4));
            // values l_i(x); skip if any vanishes
            std::vector<Rational> l(m);
            bool ok = true;
            for (int j = 0; j < m; ++j) {
                l[j] = L.col(j).dot(x);
                if (l[j] == 0) ok = false;
            }
            if (!ok) continue;
            for (const auto& c : cs) {
                // generator evaluated at z_j = 1/l_j, cleared by prod l_j
                Rational cleared(0);
                for (size_t i = 0; i < c.support.size(); ++i)
                    cleared += c.coefficients[i] * l[c.support[i]];
                CHECK(cleared == 0);
                SparsePoly g = circuit_polynomial(c, m);
                RationalVector z(m);
                for (int j = 0; j < m; ++j) z[j] = Rational(1) / l[j];
                CHECK(g.evaluate(z) == 0);
            }
        }
    }
}

TEST_CASE("parallel columns form a size-2 circuit") {
    RationalMatrix L(2, 3);
    L << 1, 2, 0, 0, 0, 1;
    auto cs = circuits(L);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].support == std::vector<int>{0, 1});
    CHECK(cs[0].coefficients == std::vector<Rational>{2, -1});
}

TEST_CASE("column-count guard") {
    RationalMatrix L = RationalMatrix::Identity(17, 17);
    CHECK_THROWS_AS(circuits(L), domain_error);
}
