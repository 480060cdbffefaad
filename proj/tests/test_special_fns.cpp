#include <doctest.h>

#include <cmath>

#include "rieszlab/kernels.hpp"
#include "rieszlab/special_fns.hpp"

using namespace rieszlab;
using namespace rieszlab::special;

TEST_CASE("gamma at integers and half-integers") {
    CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    CHECK(gamma_fn(2.5) == doctest::Approx(0.75 * std::sqrt(M_PI)).epsilon(1e-12));
    CHECK_THROWS_AS(gamma_fn(0.0), domain_error);
    CHECK_THROWS_AS(gamma_fn(-1.5), domain_error);
}

TEST_CASE("gamma recurrence on a grid") {
    for (double a = 0.1; a <= 10.0; a += 0.1) {
        double lhs = gamma_fn(a + 1.0);
        double rhs = a * gamma_fn(a);
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
}

TEST_CASE("exact gamma values") {
    GammaExact g5 = gamma_exact(Rational(5));
    CHECK(g5.coeff == 24);
    CHECK(!g5.sqrt_pi);

    GammaExact gh = gamma_exact(Rational(1, 2));
    CHECK(gh.coeff == 1);
    CHECK(gh.sqrt_pi);

    GammaExact g52 = gamma_exact(Rational(5, 2));
    CHECK(g52.coeff == Rational(3, 4));
    CHECK(g52.sqrt_pi);
    CHECK(g52.as_double() == doctest::Approx(gamma_fn(2.5)).epsilon(1e-13));

    CHECK_THROWS_AS(gamma_exact(Rational(-1, 2)), domain_error);
    CHECK_THROWS_AS(gamma_exact(Rational(1, 3)), domain_error);
}

TEST_CASE("2F1 special values") {
    CHECK(gauss_2f1(0.7, 1.3, 2.1, 0.0) == 1.0);
    CHECK(gauss_2f1(0.0, 1.3, 2.1, 0.4) == 1.0);
    // 2F1(1,1;2;z) = -log(1-z)/z
    for (double z : {0.5, -0.5, -3.0, 0.9}) {
        double expect = -std::log1p(-z) / z;
        CHECK(gauss_2f1(1.0, 1.0, 2.0, z) == doctest::Approx(expect).epsilon(1e-10));
    }
    CHECK(gauss_2f1(1.0, 1.0, 2.0, 0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, -2.0, 0.3), domain_error);
    CHECK_THROWS_AS(gauss_2f1(1.0, 1.0, 2.0, 1.5), domain_error);
    // deep negative arguments switch to the Euler integral
    for (double z : {-50.0, -500.0}) {
        double expect = -std::log1p(-z) / z;
        CHECK(gauss_2f1(1.0, 1.0, 2.0, z) == doctest::Approx(expect).epsilon(1e-9));
    }
    // half-integer parameter family from the cubic kernel, across the switch
    double lo = gauss_2f1(-0.5, 1.5, 3.0, -8.99);
    double hi = gauss_2f1(-0.5, 1.5, 3.0, -9.01);
    CHECK(lo == doctest::Approx(hi).epsilon(1e-3));
}

TEST_CASE("2F1 matches its Euler integral") {
    // c > b > 0: 2F1(a,b;c;z) = Gamma(c)/(Gamma(b)Gamma(c-b)) *
    //   int_0^1 x^{b-1} (1-x)^{c-b-1} (1-zx)^{-a} dx
    struct Case {
        double a, b, c, z;
    };
    for (const Case& t : {Case{0.5, 1.0, 2.5, 0.3}, Case{1.5, 2.0, 3.7, -0.8},
                          Case{-0.5, 1.2, 2.2, 0.45}, Case{2.0, 0.7, 3.1, -2.0}}) {
        auto f = [&](double x) {
            return std::pow(x, t.b - 1.0) * std::pow(1.0 - x, t.c - t.b - 1.0) *
                   std::pow(1.0 - t.z * x, -t.a);
        };
        IntegralResult r = integrate_adaptive_regularized(f, 0.0, 1.0, 1e-10, 4000);
        double expect = gamma_fn(t.c) / (gamma_fn(t.b) * gamma_fn(t.c - t.b)) * r.value;
        CHECK(gauss_2f1(t.a, t.b, t.c, t.z) == doctest::Approx(expect).epsilon(1e-6));
    }
}

TEST_CASE("adaptive quadrature basics") {
    auto one = [](double) { return 1.0; };
    CHECK(integrate_adaptive(one, 0.0, 1.0, 1e-12, 100).value == doctest::Approx(1.0));
    auto osc = [](double x) { return std::cos(10.0 * x); };
    CHECK(integrate_adaptive(osc, 0.0, 3.0, 1e-12, 2000).value ==
          doctest::Approx(std::sin(30.0) / 10.0).epsilon(1e-10));
    auto sing = [](double x) { return 1.0 / std::sqrt(x); };
    CHECK(integrate_adaptive_regularized(sing, 0.0, 1.0, 1e-10, 4000).value ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("Monte Carlo over the orthant") {
    QuadratureConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 77;

    SUBCASE("exponential mass is 1") {
        auto h = [](const std::vector<double>& y) { return std::exp(-y[0] - y[1]); };
        IntegralResult r = mc_integrate_orthant(h, {1.0, 1.0}, cfg);
        CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));  // zero-variance case
        CHECK(r.error <= 1e-12);
    }
    SUBCASE("int_0^inf y e^{-3y} dy = 1/9") {
        auto h = [](const std::vector<double>& y) { return y[0] * std::exp(-3.0 * y[0]); };
        IntegralResult r = mc_integrate_orthant(h, {3.0}, cfg);
        CHECK(r.value == doctest::Approx(1.0 / 9.0).epsilon(0.02));
        CHECK(std::abs(r.value - 1.0 / 9.0) <= 5 * r.error);
    }
    SUBCASE("seed determinism, any thread count") {
        auto h = [](const std::vector<double>& y) { return y[0] * std::exp(-2.0 * y[0]); };
        QuadratureConfig c1 = cfg;
        c1.threads = 1;
        QuadratureConfig c2 = cfg;
        c2.threads = 2;
        IntegralResult r1 = mc_integrate_orthant(h, {2.0}, c1);
        IntegralResult r2 = mc_integrate_orthant(h, {2.0}, c2);
        CHECK(r1.value == r2.value);  // bitwise
        QuadratureConfig c3 = cfg;
        c3.seed = 78;
        IntegralResult r3 = mc_integrate_orthant(h, {2.0}, c3);
        CHECK(r1.value != r3.value);
    }
}

TEST_CASE("real roots helper") {
    auto r1 = real_roots({-6.0, 11.0, -6.0, 1.0});  // (t-1)(t-2)(t-3)
    REQUIRE(r1.size() == 3);
    std::sort(r1.begin(), r1.end());
    CHECK(r1[0] == doctest::Approx(1.0));
    CHECK(r1[2] == doctest::Approx(3.0));
    CHECK(real_roots({1.0, 0.0, 1.0}).empty());
}

TEST_CASE("complex-integral kernel agrees with the exact piecewise kernel") {
    // p = x1 (x1 + x2), alpha = 3: the same kernel comes exactly from the
    // replicated-column construction for the matrix with columns (1,0), (1,1)
    using exactalg::SparsePoly;
    auto vars = exactalg::default_vars(2);
    SparsePoly x1 = SparsePoly::variable(vars, 0), x2 = SparsePoly::variable(vars, 1);
    SparsePoly p = x1 * (x1 + x2);
    RationalVector e(2);
    e << 1, 1;
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-4;

    RationalMatrix L(2, 2);
    L << 1, 1, 0, 1;
    auto k = kernels::kernel_linear_forms(L, {3, 3});
    for (auto pt : {std::pair<double, double>{3.0, 1.0}, {2.0, 1.5}}) {
        RationalVector y(2);
        y << Rational(static_cast<long>(pt.first * 2), 2),
            Rational(static_cast<long>(pt.second * 2), 2);
        double exact = to_double(kernels::evaluate(k, y));
        IntegralResult r = garding_numeric(p, e, 3.0, {pt.first, pt.second}, cfg);
        CHECK(r.value == doctest::Approx(exact).epsilon(0.02));
    }
}

TEST_CASE("one-dimensional complex-integral kernel") {
    // p = x, alpha = 2: kernel is y^{alpha-1}/Gamma(alpha) = y
    auto vars = exactalg::default_vars(1);
    exactalg::SparsePoly p = exactalg::SparsePoly::variable(vars, 0);
    RationalVector e(1);
    e << 1;
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-5;
    IntegralResult r = garding_numeric(p, e, 2.0, {3.0}, cfg);
    CHECK(r.value == doctest::Approx(3.0).epsilon(5e-3));
    IntegralResult r0 = garding_numeric(p, e, 2.0, {-2.0}, cfg);
    CHECK(std::abs(r0.value) < 0.05 * 3.0);
}
