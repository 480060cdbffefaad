#include "rieszlab/univariate.hpp"

namespace rieszlab::exactalg {

const Rational& UnivariatePoly::lead() const {
    if (c_.empty()) throw structural_error("leading coefficient of zero polynomial");
    return c_.back();
}

Rational UnivariatePoly::evaluate(const Rational& x) const {
    Rational out(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) out = out * x + *it;
    return out;
}

UnivariatePoly UnivariatePoly::derivative() const {
    if (c_.size() <= 1) return UnivariatePoly();
    std::vector<Rational> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Rational(static_cast<long>(k));
    return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::operator-() const {
    std::vector<Rational> d(c_.size());
    for (size_t k = 0; k < c_.size(); ++k) d[k] = -c_[k];
    return UnivariatePoly(std::move(d));
}

UnivariatePoly operator+(const UnivariatePoly& a, const UnivariatePoly& b) {
    std::vector<Rational> d(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t k = 0; k < a.c_.size(); ++k) d[k] += a.c_[k];
    for (size_t k = 0; k < b.c_.size(); ++k) d[k] += b.c_[k];
    return UnivariatePoly(std::move(d));
}

UnivariatePoly operator-(const UnivariatePoly& a, const UnivariatePoly& b) {
    return a + (-b);
}

UnivariatePoly operator*(const UnivariatePoly& a, const UnivariatePoly& b) {
    if (a.is_zero() || b.is_zero()) return UnivariatePoly();
    std::vector<Rational> d(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return UnivariatePoly(std::move(d));
}

UnivariatePoly& UnivariatePoly::operator*=(const Rational& c) {
    if (c == 0) {
        c_.clear();
        return *this;
    }
    for (auto& v : c_) v *= c;
    return *this;
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod(const UnivariatePoly& a,
                                                                 const UnivariatePoly& d) {
    if (d.is_zero()) throw structural_error("division by zero polynomial");
    std::vector<Rational> rem = a.c_;
    int dd = d.degree();
    if (a.degree() < dd) return {UnivariatePoly(), a};
    std::vector<Rational> quo(a.degree() - dd + 1, Rational(0));
    for (int k = a.degree(); k >= dd; --k) {
        Rational& top = rem[k];
        if (top == 0) continue;
        Rational f = top / d.lead();
        quo[k - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[k - dd + j] -= f * d.c_[j];
    }
    return {UnivariatePoly(std::move(quo)), UnivariatePoly(std::move(rem))};
}

UnivariatePoly poly_gcd(UnivariatePoly a, UnivariatePoly b) {
    while (!b.is_zero()) {
        auto [q, r] = UnivariatePoly::divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a *= Rational(1) / a.lead();
    return a;
}

UnivariatePoly squarefree_part(const UnivariatePoly& q) {
    if (q.is_zero()) throw structural_error("squarefree part of zero polynomial");
    if (q.degree() == 0) return UnivariatePoly({Rational(1)});
    UnivariatePoly g = poly_gcd(q, q.derivative());
    auto [sf, rem] = UnivariatePoly::divmod(q, g);
    sf *= Rational(1) / sf.lead();
    return sf;
}

namespace {

// Sturm chain of the (squarefree) polynomial, entries scaled to primitive
// integer coefficients; positive scaling keeps all sign patterns intact.
std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& p) {
    auto primitive = [](UnivariatePoly f) {
        if (f.is_zero()) return f;
        Integer den_lcm(1);
        for (const auto& c : f.coeffs()) den_lcm = lcm(den_lcm, denominator(c));
        Integer num_gcd(0);
        for (const auto& c : f.coeffs())
            num_gcd = gcd(num_gcd, Integer(numerator(c) * (den_lcm / denominator(c))));
        f *= Rational(den_lcm, num_gcd);
        return f;
    };
    std::vector<UnivariatePoly> chain;
    chain.push_back(primitive(p));
    if (p.degree() >= 1) chain.push_back(primitive(p.derivative()));
    while (chain.back().degree() >= 1) {
        auto [q, r] = UnivariatePoly::divmod(chain[chain.size() - 2], chain.back());
        if (r.is_zero()) break;
        chain.push_back(primitive(-r));
    }
    return chain;
}

int sign_at(const UnivariatePoly& f, const std::optional<Rational>& x, bool plus_infinity) {
    if (f.is_zero()) return 0;
    if (!x) {
        int lead = f.lead() > 0 ? 1 : -1;
        if (plus_infinity) return lead;
        return f.degree() % 2 == 0 ? lead : -lead;
    }
    Rational v = f.evaluate(*x);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int sign_variations(const std::vector<UnivariatePoly>& chain,
                    const std::optional<Rational>& x, bool plus_infinity) {
    int count = 0, prev = 0;
    for (const auto& f : chain) {
        int s = sign_at(f, x, plus_infinity);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++count;
        prev = s;
    }
    return count;
}

}  // namespace

int sturm_distinct_real_roots(const UnivariatePoly& q, const RootInterval& interval) {
    if (q.is_zero()) throw structural_error("root count of zero polynomial");
    UnivariatePoly g = squarefree_part(q);
    if (g.degree() == 0) return 0;
    if (interval.lo && interval.hi && *interval.lo >= *interval.hi) return 0;
    // Deflate roots at finite endpoints so the open-interval count is exact.
    if (interval.lo && g.evaluate(*interval.lo) == 0) {
        auto [quot, rem] = UnivariatePoly::divmod(g, UnivariatePoly({-*interval.lo, Rational(1)}));
        g = std::move(quot);
    }
    if (interval.hi && g.evaluate(*interval.hi) == 0) {
        auto [quot, rem] = UnivariatePoly::divmod(g, UnivariatePoly({-*interval.hi, Rational(1)}));
        g = std::move(quot);
    }
    if (g.degree() <= 0) return 0;
    auto chain = sturm_chain(g);
    int lo = sign_variations(chain, interval.lo, false);
    int hi = sign_variations(chain, interval.hi, true);
    return lo - hi;
}

bool is_real_rooted(const UnivariatePoly& q) {
    if (q.is_zero()) throw structural_error("real-rootedness of zero polynomial");
    UnivariatePoly g = squarefree_part(q);
    if (g.degree() <= 0) return true;
    return sturm_distinct_real_roots(g, RootInterval::all()) == g.degree();
}

}  // namespace rieszlab::exactalg
