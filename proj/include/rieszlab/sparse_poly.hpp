#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/rational.hpp"

namespace rieszlab::exactalg {

/// Graded lexicographic term order on exponent vectors: total degree first,
/// ties broken lexicographically. Fixed globally so equal polynomials are
/// structurally equal.
struct GradedLexLess {
    bool operator()(const std::vector<int>& a, const std::vector<int>& b) const;
};

/// Exact sparse multivariate polynomial over the rationals. Exponent vectors
/// are dense per term and always have length nvars(); zero coefficients are
/// never stored.
class SparsePoly {
  public:
    using TermMap = std::map<std::vector<int>, Rational, GradedLexLess>;

    SparsePoly() = default;
    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static SparsePoly constant(std::vector<std::string> vars, const Rational& c);
    static SparsePoly monomial(std::vector<std::string> vars, std::vector<int> exps,
                               const Rational& c);
    static SparsePoly variable(std::vector<std::string> vars, int index);
    /// c0 + sum coeffs[i] * x_i
    static SparsePoly linear_form(std::vector<std::string> vars,
                                  const RationalVector& coeffs, const Rational& c0);

    int nvars() const { return static_cast<int>(vars_.size()); }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    int total_degree() const;  // -1 for the zero polynomial
    /// Degree when homogeneous; nullopt otherwise (zero counts as homogeneous
    /// of any degree and reports 0).
    std::optional<int> homogeneous_degree() const;
    Rational coeff(const std::vector<int>& exps) const;
    /// Leading term in graded lex order; polynomial must be nonzero.
    const std::pair<const std::vector<int>, Rational>& leading_term() const;

    void add_term(const std::vector<int>& exps, const Rational& c);

    SparsePoly operator-() const;
    SparsePoly& operator+=(const SparsePoly& o);
    SparsePoly& operator-=(const SparsePoly& o);
    SparsePoly& operator*=(const Rational& c);

    bool operator==(const SparsePoly& o) const {
        return vars_ == o.vars_ && terms_ == o.terms_;
    }

    Rational evaluate(const RationalVector& point) const;
    double evaluate_double(const std::vector<double>& point) const;
    SparsePoly partial_derivative(int var) const;
    SparsePoly pow(unsigned e) const;

    friend SparsePoly operator+(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator-(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b);
    friend SparsePoly operator*(const Rational& c, const SparsePoly& a);

    std::string str() const;

  private:
    static void require_same_vars(const SparsePoly& a, const SparsePoly& b);
    std::vector<std::string> vars_;
    TermMap terms_;
};

/// Default variable names x1..xn.
std::vector<std::string> default_vars(int n, const std::string& stem = "x");

/// Apply a permutation of the variables: result(x) = p(x_perm(0),...,).
SparsePoly permute_variables(const SparsePoly& p, const std::vector<int>& perm);

/// True when p is invariant under every transposition of adjacent variables.
bool is_symmetric(const SparsePoly& p);

/// Exact division by the linear form <w,x>; nullopt when not divisible.
std::optional<SparsePoly> divide_by_linear(const SparsePoly& p, const RationalVector& w);

/// Substitute x_i = scale[i]*t + shift[i]; returns the coefficient list of the
/// resulting univariate polynomial in t, lowest degree first.
std::vector<Rational> compose_linear_univariate(const SparsePoly& p,
                                                const RationalVector& scale,
                                                const RationalVector& shift);

}  // namespace rieszlab::exactalg
