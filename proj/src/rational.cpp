#include "rieszlab/rational.hpp"

#include <numeric>

namespace rieszlab {

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw structural_error("empty rational literal");
    Rational q;
    try {
        q = Rational(s);
    } catch (const std::exception&) {
        throw structural_error("cannot parse rational '" + s + "'");
    }
    // mpq string construction does not reduce; force canonical form.
    mpq_canonicalize(q.backend().data());
    return q;
}

std::string to_string(const Rational& q) { return q.str(); }

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational pow_rational(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0 && e < 0) throw domain_error("zero base with negative exponent");
    Rational base = e < 0 ? Rational(1) / q : q;
    unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational out(1);
    while (k) {
        if (k & 1) out *= base;
        base *= base;
        k >>= 1;
    }
    return out;
}

Integer floor_rational(const Rational& q) {
    Integer n = numerator(q), d = denominator(q);
    Integer f = n / d;
    if (n % d != 0 && n < 0) f -= 1;
    return f;
}

RationalVector integer_primitive(const RationalVector& v) {
    Integer den_lcm(1);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        den_lcm = lcm(den_lcm, denominator(v[i]));
    Integer num_gcd(0);
    for (Eigen::Index i = 0; i < v.size(); ++i)
        num_gcd = gcd(num_gcd, Integer(numerator(v[i]) * (den_lcm / denominator(v[i]))));
    if (num_gcd == 0) return v;
    RationalVector out(v.size());
    Rational scale(den_lcm, num_gcd);
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] * scale;
    return out;
}

RationalVector sign_canonical_primitive(const RationalVector& v) {
    RationalVector out = integer_primitive(v);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        if (out[i] == 0) continue;
        if (out[i] < 0) out = -out;
        break;
    }
    return out;
}

int sign(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

std::vector<Rational> to_std(const RationalVector& v) {
    return std::vector<Rational>(v.data(), v.data() + v.size());
}

RationalVector from_std(const std::vector<Rational>& v) {
    RationalVector out(static_cast<Eigen::Index>(v.size()));
    for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
    return out;
}

}  // namespace rieszlab
