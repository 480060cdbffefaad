#pragma once

#include <optional>

#include "rieszlab/hyperbolicity.hpp"
#include "rieszlab/kernels.hpp"

namespace rieszlab::certify {

using exactalg::SparsePoly;

/// Invariant: the current derivative of p^s equals numerator * p^{s-order}.
struct DerivativeState {
    SparsePoly base;
    Rational s;
    int order = 0;
    SparsePoly numerator;
};

DerivativeState initial_state(SparsePoly p, const Rational& s);

/// One more signed derivative along the given variable:
/// P <- (d_i P) p + (s - k) P (d_i p).
DerivativeState derivative_step(const DerivativeState& st, int var);

/// Derivative for a whole multi-index (applied in variable order).
DerivativeState signed_derivative(const SparsePoly& p, const Rational& s,
                                  const std::vector<int>& multiindex);

/// coeff * base^exponent with the exponent reduced to [0,1).
struct ExactPowerValue {
    Rational coeff;
    Rational base;
    Rational exponent;
    double as_double() const;
};

/// Exact value of the derivative at x0 (requires p(x0) > 0).
ExactPowerValue evaluate_state(const DerivativeState& st, const RationalVector& x0);

/// Sign of (-1)^order * derivative(x0); exact, no floating point.
int signed_sign(const DerivativeState& st, const RationalVector& x0);

struct LaplaceCheck {
    std::vector<Rational> x;
    double target = 0;
    double estimate = 0;
    double relative_error = 0;
    double mc_stderr = 0;
    long samples = 0;
    uint64_t seed = 0;
};

struct RefutationWitness {
    std::vector<int> multiindex;
    std::vector<Rational> point;
    ExactPowerValue value;
    int numerator_terms = 0;
    int numerator_degree = 0;
    std::optional<SparsePoly> numerator;  // full polynomial, flag-gated
};

struct Certificate {
    enum class Status { CM_CERTIFIED, CM_REFUTED, UNKNOWN };
    Status status = Status::UNKNOWN;
    std::string problem;
    std::string kernel_description;
    std::optional<RefutationWitness> witness;
    std::vector<LaplaceCheck> laplace_checks;
    std::optional<hyperbolicity::HyperbolicityReport> hyperbolicity_report;
    long nonnegativity_samples = 0;
    bool nonnegativity_passed = false;
    std::string reason;
};

/// Breadth-first search for an exact negative signed derivative of p^s over
/// multi-indices up to max_order, at each of the given points. Finds
/// CM_REFUTED with an exact witness or returns UNKNOWN; never certifies.
Certificate refute_cm(const SparsePoly& p, const Rational& s, int max_order,
                      const std::vector<RationalVector>& points,
                      const std::optional<hyperbolicity::HyperbolicInstance>& cone_check,
                      bool keep_numerator = false, uint64_t seed = 20240601);

/// Default refuter point set: the all-ones vector plus a seeded rational
/// grid in the open orthant.
std::vector<RationalVector> default_refuter_points(int nvars, uint64_t seed, int extra = 8);

/// |MC estimate of the Laplace transform of q at x minus target| / target,
/// with exponential importance sampling on the orthant frame.
LaplaceCheck laplace_residual(const std::function<double(const std::vector<double>&)>& q,
                              const std::vector<Rational>& x, double target,
                              const special::QuadratureConfig& cfg);

/// Laplace residual against the trace pairing on 2x2 symmetric matrices,
/// sampling the PSD cone (diagonal exponential, off-diagonal uniform in the
/// PSD slab). x and y are packed as (a11, a12, a22).
LaplaceCheck laplace_residual_psd2(const std::function<double(const std::vector<double>&)>& q,
                                   const std::vector<Rational>& x, double target,
                                   const special::QuadratureConfig& cfg);

/// Problems the certifier understands.
struct CertifyProblem {
    enum class Kind {
        linear_forms,      // matrix L + integer alpha
        e23,               // E_{2,3}^{-alpha}
        e24,               // E_{2,4}^{-alpha}
        determinant,       // det(x)^{-alpha}, m x m
        cubic,             // (x1 x2 (x1 + v x2))^{-alpha}
        e35_stage,         // (Q4 + x5 E_{2,4})^{-alpha}
        elementary,        // E_{m,n}^{-alpha}, refutation route only
        raw,               // arbitrary homogeneous p^s, refutation route only
    };
    Kind kind = Kind::raw;
    std::optional<RationalMatrix> L;
    std::vector<long> alpha_int;
    Rational alpha;  // positive exponent (f = p^{-alpha})
    int m = 0, n = 0;
    Rational v;
    std::optional<SparsePoly> poly;
    std::optional<RationalVector> e;
};

struct CertifyConfig {
    special::QuadratureConfig quad;
    int max_order = 8;
    int hyperbolicity_trials = 200;
    double laplace_tolerance = 0.05;
    long nonneg_samples = 500;
    bool keep_numerator = false;
};

/// A constructed kernel with everything needed to validate it.
struct KernelPlan {
    std::function<double(const std::vector<double>&)> q;
    std::function<bool(const RationalVector&)> support;
    int dim = 0;
    std::string description;
    bool psd_frame = false;
    SparsePoly p;
    RationalVector e;
    std::function<double(const RationalVector&)> target;
};

/// Kernel construction for the supported problem classes; nullopt (with the
/// reason filled in) when none applies.
std::optional<KernelPlan> make_kernel_plan(const CertifyProblem& problem,
                                           const special::QuadratureConfig& quad,
                                           std::optional<kernels::PiecewiseKernel>& piecewise,
                                           std::string* unsupported_reason);

/// One Laplace residual check of the problem's kernel at the point x.
LaplaceCheck laplace_check_for(const CertifyProblem& problem, const RationalVector& x,
                               const special::QuadratureConfig& cfg);

/// Orchestrates hyperbolicity checking, kernel construction, nonnegativity
/// sampling and Laplace validation; falls back to the refuter when no kernel
/// construction applies. A certified kernel with a failed hyperbolicity
/// check is an internal inconsistency and aborts.
Certificate certify(const CertifyProblem& problem, const CertifyConfig& config);

}  // namespace rieszlab::certify
