#include "rieszlab/sparse_poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rieszlab::exactalg {

bool GradedLexLess::operator()(const std::vector<int>& a, const std::vector<int>& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SparsePoly SparsePoly::constant(std::vector<std::string> vars, const Rational& c) {
    SparsePoly p(std::move(vars));
    p.add_term(std::vector<int>(p.nvars(), 0), c);
    return p;
}

SparsePoly SparsePoly::monomial(std::vector<std::string> vars, std::vector<int> exps,
                                const Rational& c) {
    SparsePoly p(std::move(vars));
    if (static_cast<int>(exps.size()) != p.nvars())
        throw structural_error("exponent vector length mismatch");
    p.add_term(exps, c);
    return p;
}

SparsePoly SparsePoly::variable(std::vector<std::string> vars, int index) {
    SparsePoly p(std::move(vars));
    std::vector<int> e(p.nvars(), 0);
    e.at(index) = 1;
    p.add_term(e, Rational(1));
    return p;
}

SparsePoly SparsePoly::linear_form(std::vector<std::string> vars,
                                   const RationalVector& coeffs, const Rational& c0) {
    SparsePoly p(std::move(vars));
    if (coeffs.size() != p.nvars()) throw structural_error("linear form length mismatch");
    p.add_term(std::vector<int>(p.nvars(), 0), c0);
    for (int i = 0; i < p.nvars(); ++i) {
        std::vector<int> e(p.nvars(), 0);
        e[i] = 1;
        p.add_term(e, coeffs[i]);
    }
    return p;
}

int SparsePoly::total_degree() const {
    if (terms_.empty()) return -1;
    // the map is graded, so the last key has maximal degree
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

std::optional<int> SparsePoly::homogeneous_degree() const {
    if (terms_.empty()) return 0;
    int d = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0);
    for (const auto& [e, c] : terms_) {
        if (std::accumulate(e.begin(), e.end(), 0) != d) return std::nullopt;
    }
    return d;
}

Rational SparsePoly::coeff(const std::vector<int>& exps) const {
    auto it = terms_.find(exps);
    return it == terms_.end() ? Rational(0) : it->second;
}

const std::pair<const std::vector<int>, Rational>& SparsePoly::leading_term() const {
    if (terms_.empty()) throw structural_error("leading term of zero polynomial");
    return *terms_.rbegin();
}

void SparsePoly::add_term(const std::vector<int>& exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != nvars())
        throw structural_error("exponent vector length mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

void SparsePoly::require_same_vars(const SparsePoly& a, const SparsePoly& b) {
    if (a.vars_ != b.vars_)
        throw structural_error("polynomials defined over different variable lists");
}

SparsePoly& SparsePoly::operator+=(const SparsePoly& o) {
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

SparsePoly& SparsePoly::operator-=(const SparsePoly& o) {
    require_same_vars(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

SparsePoly& SparsePoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out = a;
    out += b;
    return out;
}

SparsePoly operator-(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly out = a;
    out -= b;
    return out;
}

SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    SparsePoly::require_same_vars(a, b);
    SparsePoly out(a.vars_);
    std::vector<int> e(a.nvars());
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

SparsePoly operator*(const Rational& c, const SparsePoly& a) {
    SparsePoly out = a;
    out *= c;
    return out;
}

Rational SparsePoly::evaluate(const RationalVector& point) const {
    if (point.size() != nvars()) throw structural_error("evaluation point length mismatch");
    Rational out(0);
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (int i = 0; i < nvars(); ++i) {
            if (e[i] > 0) t *= pow_rational(point[i], e[i]);
        }
        out += t;
    }
    return out;
}

double SparsePoly::evaluate_double(const std::vector<double>& point) const {
    double out = 0;
    for (const auto& [e, c] : terms_) {
        double t = to_double(c);
        for (size_t i = 0; i < point.size(); ++i) {
            for (int k = 0; k < e[i]; ++k) t *= point[i];
        }
        out += t;
    }
    return out;
}

SparsePoly SparsePoly::partial_derivative(int var) const {
    if (var < 0 || var >= nvars()) throw structural_error("derivative variable out of range");
    SparsePoly out(vars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        out.add_term(d, c * e[var]);
    }
    return out;
}

SparsePoly SparsePoly::pow(unsigned e) const {
    SparsePoly out = constant(vars_, Rational(1));
    SparsePoly base = *this;
    while (e) {
        if (e & 1) out = out * base;
        if (e >>= 1) base = base * base;
    }
    return out;
}

std::string SparsePoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        bool any_var = std::any_of(e.begin(), e.end(), [](int k) { return k > 0; });
        if (a != 1 || !any_var) os << a.str();
        bool star = (a != 1);
        for (int i = 0; i < nvars(); ++i) {
            if (e[i] == 0) continue;
            if (star) os << "*";
            os << vars_[i];
            if (e[i] > 1) os << "^" << e[i];
            star = true;
        }
    }
    return os.str();
}

std::vector<std::string> default_vars(int n, const std::string& stem) {
    std::vector<std::string> v;
    v.reserve(n);
    for (int i = 1; i <= n; ++i) v.push_back(stem + std::to_string(i));
    return v;
}

SparsePoly permute_variables(const SparsePoly& p, const std::vector<int>& perm) {
    SparsePoly out(p.vars());
    std::vector<int> e(p.nvars());
    for (const auto& [exps, c] : p.terms()) {
        for (int i = 0; i < p.nvars(); ++i) e[i] = exps[perm[i]];
        out.add_term(e, c);
    }
    return out;
}

bool is_symmetric(const SparsePoly& p) {
    const int n = p.nvars();
    std::vector<int> perm(n);
    for (int k = 0; k + 1 < n; ++k) {
        std::iota(perm.begin(), perm.end(), 0);
        std::swap(perm[k], perm[k + 1]);
        if (!(permute_variables(p, perm) == p)) return false;
    }
    return true;
}

std::optional<SparsePoly> divide_by_linear(const SparsePoly& p, const RationalVector& w) {
    if (w.size() != p.nvars()) throw structural_error("linear form length mismatch");
    int pivot = -1;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (w[i] != 0) { pivot = static_cast<int>(i); break; }
    }
    if (pivot < 0) throw structural_error("zero linear form");
    // Synthetic division viewing p in the pivot variable: substitute
    // x_pivot -> x_pivot - <w,x>/w_pivot step by step. The remainder is
    // p with x_pivot replaced by -sum_{i != pivot} w_i x_i / w_pivot.
    SparsePoly quotient(p.vars());
    SparsePoly rest = p;
    while (!rest.is_zero()) {
        // peel the terms of highest pivot-degree
        int dmax = 0;
        for (const auto& [e, c] : rest.terms()) dmax = std::max(dmax, e[pivot]);
        if (dmax == 0) break;
        SparsePoly block(p.vars());
        for (const auto& [e, c] : rest.terms()) {
            if (e[pivot] == dmax) {
                std::vector<int> q = e;
                q[pivot] -= 1;
                block.add_term(q, c / w[pivot]);
            }
        }
        quotient += block;
        // rest -= block * <w,x>
        SparsePoly lin = SparsePoly::linear_form(p.vars(), w, Rational(0));
        rest -= block * lin;
    }
    if (!rest.is_zero()) return std::nullopt;
    return quotient;
}

std::vector<Rational> compose_linear_univariate(const SparsePoly& p,
                                                const RationalVector& scale,
                                                const RationalVector& shift) {
    const int n = p.nvars();
    if (scale.size() != n || shift.size() != n)
        throw structural_error("substitution vector length mismatch");
    int deg = std::max(p.total_degree(), 0);
    std::vector<Rational> out(deg + 1, Rational(0));
    // Per-variable binomial expansions of (scale_i t + shift_i)^k, built once
    // up to the largest exponent that occurs.
    std::vector<int> maxe(n, 0);
    for (const auto& [e, c] : p.terms())
        for (int i = 0; i < n; ++i) maxe[i] = std::max(maxe[i], e[i]);
    std::vector<std::vector<std::vector<Rational>>> powers(n);
    for (int i = 0; i < n; ++i) {
        powers[i].resize(maxe[i] + 1);
        powers[i][0] = {Rational(1)};
        for (int k = 1; k <= maxe[i]; ++k) {
            const auto& prev = powers[i][k - 1];
            std::vector<Rational> cur(k + 1, Rational(0));
            for (int j = 0; j < static_cast<int>(prev.size()); ++j) {
                cur[j] += prev[j] * shift[i];
                cur[j + 1] += prev[j] * scale[i];
            }
            powers[i][k] = std::move(cur);
        }
    }
    std::vector<Rational> acc, next;
    for (const auto& [e, c] : p.terms()) {
        acc.assign(1, c);
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            const auto& f = powers[i][e[i]];
            next.assign(acc.size() + f.size() - 1, Rational(0));
            for (size_t a = 0; a < acc.size(); ++a)
                for (size_t b = 0; b < f.size(); ++b) next[a + b] += acc[a] * f[b];
            acc.swap(next);
        }
        for (size_t k = 0; k < acc.size(); ++k) out[k] += acc[k];
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace rieszlab::exactalg
