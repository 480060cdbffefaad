#pragma once

#include <optional>
#include <vector>

#include "rieszlab/rational.hpp"

namespace rieszlab::exactalg {

/// Dense univariate polynomial over the rationals, coefficients stored
/// lowest degree first, leading coefficient nonzero unless zero.
class UnivariatePoly {
  public:
    UnivariatePoly() = default;
    explicit UnivariatePoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 when zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    const Rational& lead() const;
    Rational operator[](int k) const {
        return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0);
    }

    Rational evaluate(const Rational& x) const;
    UnivariatePoly derivative() const;

    UnivariatePoly operator-() const;
    friend UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b);
    friend UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b);
    friend UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b);
    UnivariatePoly& operator*=(const Rational& c);
    bool operator==(const UnivariatePoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder of division by d (d nonzero).
    static std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& a,
                                                            const UnivariatePoly& d);

  private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

/// Monic gcd (1 for coprime inputs, 0 only if both zero).
UnivariatePoly poly_gcd(UnivariatePoly a, UnivariatePoly b);

/// q / gcd(q, q'), normalized monic. Shares the distinct roots of q.
UnivariatePoly squarefree_part(const UnivariatePoly& q);

/// Interval with optional rational endpoints; an absent endpoint means
/// -infinity (lo) or +infinity (hi). Both absent = the whole line.
struct RootInterval {
    std::optional<Rational> lo, hi;
    static RootInterval all() { return {}; }
    static RootInterval positive() { return {Rational(0), std::nullopt}; }
};

/// Number of distinct real roots of q in the *open* interval, exact, via a
/// Sturm chain on the primitive squarefree part. Zero polynomial is an error.
int sturm_distinct_real_roots(const UnivariatePoly& q, const RootInterval& interval = {});

/// True when every complex root of q is real (q nonzero).
bool is_real_rooted(const UnivariatePoly& q);

}  // namespace rieszlab::exactalg
