#include "rieszlab/convalg.hpp"

#include <algorithm>

namespace rieszlab::convalg {

std::vector<Circuit> circuits(const RationalMatrix& L) {
    const int m = static_cast<int>(L.cols());
    const int n = static_cast<int>(L.rows());
    if (m > 16) throw domain_error("circuit scan supports at most 16 columns");
    std::vector<Circuit> out;
    std::vector<std::vector<int>> found_supports;
    for (int size = 2; size <= std::min(m, n + 1); ++size) {
        std::vector<int> idx(size);
        auto rec = [&](auto&& self, int pos, int start) -> void {
            if (pos == size) {
                // skip supersets of an existing circuit
                for (const auto& s : found_supports) {
                    if (std::includes(idx.begin(), idx.end(), s.begin(), s.end())) return;
                }
                RationalMatrix sub(n, size);
                for (int j = 0; j < size; ++j) sub.col(j) = L.col(idx[j]);
                auto kern = exactalg::nullspace(sub);
                if (kern.size() != 1) return;
                const RationalVector& v = kern[0];
                for (int j = 0; j < size; ++j)
                    if (v[j] == 0) return;  // dependence not supported everywhere
                Circuit c;
                c.support = idx;
                RationalVector prim = sign_canonical_primitive(v);
                c.coefficients.assign(prim.data(), prim.data() + size);
                out.push_back(std::move(c));
                found_supports.push_back(idx);
                return;
            }
            for (int j = start; j < m; ++j) {
                idx[pos] = j;
                self(self, pos + 1, j + 1);
            }
        };
        rec(rec, 0, 0);
    }
    return out;
}

SparsePoly circuit_polynomial(const Circuit& c, int m) {
    const int size = static_cast<int>(c.support.size());
    for (int j : c.support)
        if (j < 0 || j >= m) throw structural_error("circuit support outside column range");
    SparsePoly p(exactalg::default_vars(m, "z"));
    for (int i = 0; i < size; ++i) {
        std::vector<int> e(m, 0);
        for (int j = 0; j < size; ++j)
            if (j != i) e[c.support[j]] = 1;
        p.add_term(e, c.coefficients[i]);
    }
    if (!p.is_zero() && p.leading_term().second < 0) p *= Rational(-1);
    return p;
}

std::vector<SparsePoly> orlik_terao_generators(const RationalMatrix& L) {
    auto cs = circuits(L);
    std::vector<SparsePoly> out;
    out.reserve(cs.size());
    for (const auto& c : cs) out.push_back(circuit_polynomial(c, static_cast<int>(L.cols())));
    return out;
}

}  // namespace rieszlab::convalg
