#pragma once

#include <functional>
#include <vector>

#include "rieszlab/rational.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/sparse_poly.hpp"

namespace rieszlab::special {

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QuadratureConfig {
    double rel_tol = 1e-10;
    int max_subdiv = 4000;
    uint64_t seed = 20240601;
    long samples = 1000000;
    int threads = 0;  // 0 = hardware concurrency
};

/// Gamma function for a > 0, relative error ~1e-13 (Lanczos).
double gamma_fn(double a);

/// Exact value c * sqrt(pi)^{flag} of Gamma at a positive integer or
/// half-integer argument.
struct GammaExact {
    Rational coeff;
    bool sqrt_pi = false;
    double as_double() const;
};
GammaExact gamma_exact(const Rational& a);
bool is_half_integer(const Rational& a);

/// Gauss hypergeometric function for z < 1 (series plus the z/(z-1) and
/// 1-z connection formulas). c must not be a nonpositive integer.
double gauss_2f1(double a, double b, double c, double z);

struct IntegralResult {
    double value = 0;
    double error = 0;  // internal estimate
};

/// Adaptive Gauss-Kronrod integration over [a, b]. Throws convergence_error
/// when the subdivision budget runs out before reaching the tolerance.
IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, int max_subdiv);

/// Same, after the substitution t = a + (b-a)*s^K at both endpoints (split
/// at the midpoint), which regularizes integrable endpoint singularities
/// t^{alpha-1} with alpha > 1/K.
IntegralResult integrate_adaptive_regularized(const std::function<double(double)>& f, double a,
                                              double b, double rel_tol, int max_subdiv,
                                              int K = 6);

/// Seeded Monte Carlo driver: draw_weight produces one importance-weighted
/// sample from its generator. Chunked so the result is bitwise deterministic
/// for fixed (seed, samples) regardless of thread count; exceptions from
/// workers are rethrown.
IntegralResult mc_integrate(const std::function<double(Rng&)>& draw_weight,
                            const QuadratureConfig& cfg);

/// Seeded importance-sampled Monte Carlo over the positive orthant with the
/// exponential tilt prod_i rate_i * exp(-rate_i y_i). Returns the estimate of
/// integral of h over the orthant and a sample-variance error estimate.
/// Deterministic for fixed (seed, samples), independent of thread count.
IntegralResult mc_integrate_orthant(const std::function<double(const std::vector<double>&)>& h,
                                    const std::vector<double>& rates,
                                    const QuadratureConfig& cfg);

/// Riesz kernel of p^{-alpha} by numeric inversion of the complex integral
/// representation, n <= 2 variables, alpha > n. The continuous branch of
/// log p(e+ix) is computed from the real characteristic roots of x.
IntegralResult garding_numeric(const exactalg::SparsePoly& p, const RationalVector& e,
                               double alpha, const std::vector<double>& y,
                               const QuadratureConfig& cfg);

/// Real roots of a polynomial with double coefficients (lowest first),
/// via closed forms for degree <= 2 and the companion matrix otherwise.
std::vector<double> real_roots(const std::vector<double>& coeffs);

}  // namespace rieszlab::special
