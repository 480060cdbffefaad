#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace rieszlab {

/// Exact arbitrary-precision rational scalar. Arithmetic keeps values
/// canonical (lowest terms, positive denominator, zero is 0/1).
/// Expression templates are off: Eigen needs eagerly evaluated scalars.
using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;
using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int,
                                  boost::multiprecision::et_off>;

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using RationalVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

struct structural_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse "num/den" or a bare integer; result is canonicalized.
Rational parse_rational(const std::string& s);

/// Canonical string form: "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// q^e for integer e (e may be negative; q must be nonzero then).
Rational pow_rational(const Rational& q, long e);

/// Largest integer <= q.
Integer floor_rational(const Rational& q);

/// Scale a rational vector to a primitive integer vector (gcd of entries 1).
/// Keeps direction; zero vector maps to itself.
RationalVector integer_primitive(const RationalVector& v);

/// integer_primitive followed by a sign flip making the first nonzero entry
/// positive.
RationalVector sign_canonical_primitive(const RationalVector& v);

int sign(const Rational& q);

std::vector<Rational> to_std(const RationalVector& v);
RationalVector from_std(const std::vector<Rational>& v);

}  // namespace rieszlab
