#include "rieszlab/hyperbolicity.hpp"

#include "rieszlab/rng.hpp"

namespace rieszlab::hyperbolicity {

HyperbolicInstance HyperbolicInstance::make(SparsePoly p, RationalVector e) {
    HyperbolicInstance inst;
    auto deg = p.homogeneous_degree();
    if (!deg) throw domain_error("hyperbolicity requires a homogeneous polynomial");
    inst.degree = *deg;
    if (e.size() != p.nvars()) throw structural_error("direction has wrong dimension");
    if (p.evaluate(e) <= 0) throw domain_error("p(e) must be positive");
    inst.p = std::move(p);
    inst.e = std::move(e);
    return inst;
}

SparsePoly elementary_symmetric(int m, int n) {
    if (m < 0 || m > n) throw domain_error("elementary symmetric requires 0 <= m <= n");
    auto vars = exactalg::default_vars(n);
    SparsePoly p(vars);
    std::vector<int> idx(m);
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == m) {
            std::vector<int> e(n, 0);
            for (int k : idx) e[k] = 1;
            p.add_term(e, Rational(1));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[pos] = i;
            self(self, pos + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
    return p;
}

HyperbolicInstance symmetric_determinant_2x2() {
    std::vector<std::string> vars{"x11", "x12", "x22"};
    SparsePoly det(vars);
    det.add_term({1, 0, 1}, Rational(1));
    det.add_term({0, 2, 0}, Rational(-1));
    RationalVector e(3);
    e << 1, 0, 1;
    return HyperbolicInstance::make(det, e);
}

UnivariatePoly direction_restriction(const SparsePoly& p, const RationalVector& e,
                                     const RationalVector& x) {
    return UnivariatePoly(exactalg::compose_linear_univariate(p, e, RationalVector(-x)));
}

HyperbolicityReport hyperbolicity_check(const HyperbolicInstance& inst, int trials,
                                        uint64_t seed) {
    HyperbolicityReport rep;
    rep.trials = trials;
    rep.seed = seed;
    Rational pe = inst.p.evaluate(inst.e);
    if (pe <= 0) {
        rep.passed = false;
        rep.note = "p(e) is not positive";
        rep.witness = inst.e;
        return rep;
    }
    const int n = inst.p.nvars();
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
        RationalVector x(n);
        for (int i = 0; i < n; ++i) x[i] = rng.rational_in(10, 64);
        UnivariatePoly q = direction_restriction(inst.p, inst.e, x);
        if (q.is_zero()) continue;  // x on a measure-zero degeneracy, skip
        UnivariatePoly sf = exactalg::squarefree_part(q);
        int real = exactalg::sturm_distinct_real_roots(sf);
        if (real != sf.degree()) {
            rep.passed = false;
            rep.witness = x;
            rep.nonreal_roots = sf.degree() - real;
            rep.note = "nonreal roots along t -> p(t*e - x)";
            return rep;
        }
    }
    rep.passed = true;
    return rep;
}

bool cone_membership(const HyperbolicInstance& inst, const RationalVector& x) {
    UnivariatePoly q = direction_restriction(inst.p, inst.e, x);
    if (q.is_zero()) return false;
    UnivariatePoly sf = exactalg::squarefree_part(q);
    if (sf.degree() == 0) return false;  // constant: p(te - x) degenerate
    if (sf.evaluate(Rational(0)) == 0) return false;  // zero root: boundary
    int real = exactalg::sturm_distinct_real_roots(sf);
    if (real != sf.degree()) return false;
    int positive = exactalg::sturm_distinct_real_roots(sf, exactalg::RootInterval::positive());
    return positive == sf.degree();
}

}  // namespace rieszlab::hyperbolicity
