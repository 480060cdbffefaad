#include "rieszlab/chamber.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "rieszlab/rng.hpp"

namespace rieszlab::polyhedra {

namespace {

struct VecLexLess {
    bool operator()(const RationalVector& a, const RationalVector& b) const {
        for (Eigen::Index i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

std::vector<RationalVector> arrangement_hyperplanes(const RationalMatrix& L) {
    const int n = static_cast<int>(L.rows()), m = static_cast<int>(L.cols());
    std::vector<RationalVector> normals;
    std::vector<int> subset(n - 1);
    auto emit = [&]() {
        std::vector<RationalVector> cols;
        for (int j : subset) cols.push_back(L.col(j));
        RationalMatrix M = exactalg::columns_to_matrix(cols, n);
        if (!cols.empty() && exactalg::rank(M) < n - 1) return;
        RationalVector w = generalized_cross(cols, n);
        bool zero = true;
        for (int i = 0; i < n; ++i)
            if (w[i] != 0) zero = false;
        if (zero) return;
        normals.push_back(sign_canonical_primitive(w));
    };
    auto rec = [&](auto&& self, int pos, int start) -> void {
        if (pos == n - 1) {
            emit();
            return;
        }
        for (int j = start; j < m; ++j) {
            subset[pos] = j;
            self(self, pos + 1, j + 1);
        }
    };
    if (n == 1) emit();
    else rec(rec, 0, 0);
    std::sort(normals.begin(), normals.end(), VecLexLess{});
    normals.erase(std::unique(normals.begin(), normals.end(),
                              [](const RationalVector& a, const RationalVector& b) { return a == b; }),
                  normals.end());
    return normals;
}

std::vector<int> sign_vector(const std::vector<RationalVector>& hyps, const RationalVector& y) {
    std::vector<int> s(hyps.size());
    for (size_t i = 0; i < hyps.size(); ++i) s[i] = sign(hyps[i].dot(y));
    return s;
}

}  // namespace

ChamberComplex chamber_complex(const RationalMatrix& L) {
    const int n = static_cast<int>(L.rows()), m = static_cast<int>(L.cols());
    if (exactalg::rank(L) < n)
        throw degenerate_input_error(
            "columns do not span the ambient space: the pushforward measure is "
            "supported on a lower-dimensional cone and has no density there");

    ChamberComplex cc;
    cc.L = L;

    // facet normals of cone(L) = extreme rays of the dual cone {z : L^T z >= 0}
    std::vector<RationalVector> dual_ineqs;
    for (int j = 0; j < m; ++j) dual_ineqs.push_back(L.col(j));
    auto dual_rays = cone_extreme_rays(dual_ineqs, n);
    {
        RationalMatrix D = exactalg::columns_to_matrix(dual_rays, n);
        if (dual_rays.empty() || exactalg::rank(D) < n)
            throw degenerate_input_error(
                "cone spanned by the columns is not pointed: no kernel density exists");
    }
    cc.cone_facets = dual_rays;

    cc.hyperplanes = arrangement_hyperplanes(L);
    const auto& hyps = cc.hyperplanes;

    // deterministic generic interior start point
    Rng rng(0x5eedULL);
    RationalVector y0;
    for (int attempt = 0; attempt < 256; ++attempt) {
        RationalVector u(m);
        for (int j = 0; j < m; ++j) u[j] = Rational(rng.int_in(1, 97));
        y0 = L * u;
        bool generic = true;
        for (const auto& w : hyps)
            if (w.dot(y0) == 0) generic = false;
        if (generic) break;
        if (attempt == 255) throw structural_error("failed to find a generic interior point");
    }

    std::map<std::vector<int>, int> seen;
    std::vector<std::vector<int>> cell_signs;
    std::vector<RationalVector> queue_pts{y0};
    seen[sign_vector(hyps, y0)] = 0;
    cell_signs.push_back(sign_vector(hyps, y0));

    struct WallKey {
        int a, b;
        bool operator<(const WallKey& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
    };
    std::map<WallKey, RationalVector> wall_map;

    for (size_t head = 0; head < queue_pts.size(); ++head) {
        const std::vector<int> sigma = cell_signs[head];
        // extreme rays of the closed cell
        std::vector<RationalVector> cell_ineqs;
        for (size_t i = 0; i < hyps.size(); ++i)
            cell_ineqs.push_back(sigma[i] > 0 ? hyps[i] : RationalVector(-hyps[i]));
        auto rays = cone_extreme_rays(cell_ineqs, n);
        cc.cell_rays.push_back(rays);

        HPolyhedron cell;
        cell.dim = n;
        std::vector<size_t> facet_idx;
        for (size_t i = 0; i < hyps.size(); ++i) {
            std::vector<RationalVector> tight;
            for (const auto& r : rays)
                if (hyps[i].dot(r) == 0) tight.push_back(r);
            RationalMatrix T = exactalg::columns_to_matrix(tight, n);
            if (exactalg::rank(T) != n - 1) continue;
            facet_idx.push_back(i);
            cell.inequalities.push_back({sigma[i] > 0 ? hyps[i] : RationalVector(-hyps[i]),
                                         Rational(0)});
        }
        cc.cells.push_back(cell);

        RationalVector p = RationalVector::Zero(n);
        for (const auto& r : rays) p += r;

        for (size_t fi = 0; fi < facet_idx.size(); ++fi) {
            size_t i = facet_idx[fi];
            std::vector<RationalVector> tight;
            for (const auto& r : rays)
                if (hyps[i].dot(r) == 0) tight.push_back(r);
            if (tight.empty()) continue;  // apex facet at the origin (n = 1)
            // facet point avoiding every other hyperplane
            RationalVector f;
            Rng frng(0xfaceULL ^ (head * 131 + i));
            bool ok = false;
            for (int attempt = 0; attempt < 256 && !ok; ++attempt) {
                f = RationalVector::Zero(n);
                for (const auto& r : tight) f += Rational(frng.int_in(1, 97)) * r;
                ok = true;
                for (size_t j = 0; j < hyps.size(); ++j)
                    if (j != i && hyps[j].dot(f) == 0) ok = false;
            }
            if (!ok) throw structural_error("failed to find a generic facet point");
            // cross the wall: q = f + t (f - p), halving t until only
            // hyperplane i changes sign
            RationalVector diff = f - p;
            Rational t(1);
            RationalVector q;
            for (int attempt = 0;; ++attempt) {
                if (attempt > 200) throw structural_error("wall crossing failed to converge");
                q = f + t * diff;
                bool good = sign(hyps[i].dot(q)) == -sigma[i];
                for (size_t j = 0; j < hyps.size() && good; ++j)
                    if (j != i && sign(hyps[j].dot(q)) != sigma[j]) good = false;
                if (good) break;
                t /= 2;
            }
            // outside cone(L) means the wall is on the boundary
            bool inside = true;
            for (const auto& c : cc.cone_facets)
                if (!(c.dot(q) > 0)) inside = false;
            if (!inside) continue;
            auto sig_q = sign_vector(hyps, q);
            auto it = seen.find(sig_q);
            int neighbor;
            if (it == seen.end()) {
                neighbor = static_cast<int>(queue_pts.size());
                seen[sig_q] = neighbor;
                cell_signs.push_back(sig_q);
                queue_pts.push_back(q);
            } else {
                neighbor = it->second;
            }
            WallKey key{std::min<int>(static_cast<int>(head), neighbor),
                        std::max<int>(static_cast<int>(head), neighbor)};
            wall_map.emplace(key, hyps[i]);
        }
    }

    // normalize cell order for schedule-independent output
    std::vector<int> order(cc.cells.size());
    std::iota(order.begin(), order.end(), 0);
    auto cell_key = [&](int c) {
        std::vector<RationalVector> key;
        for (const auto& h : cc.cells[c].inequalities) key.push_back(h.normal);
        std::sort(key.begin(), key.end(), VecLexLess{});
        return key;
    };
    std::vector<std::vector<RationalVector>> keys(cc.cells.size());
    for (size_t c = 0; c < cc.cells.size(); ++c) keys[c] = cell_key(static_cast<int>(c));
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::lexicographical_compare(keys[a].begin(), keys[a].end(), keys[b].begin(),
                                            keys[b].end(), VecLexLess{});
    });
    std::vector<int> rankof(order.size());
    for (size_t i = 0; i < order.size(); ++i) rankof[order[i]] = static_cast<int>(i);

    ChamberComplex out;
    out.L = cc.L;
    out.hyperplanes = cc.hyperplanes;
    out.cone_facets = cc.cone_facets;
    out.cells.resize(cc.cells.size());
    out.cell_rays.resize(cc.cells.size());
    for (size_t c = 0; c < cc.cells.size(); ++c) {
        out.cells[rankof[c]] = cc.cells[c];
        out.cell_rays[rankof[c]] = cc.cell_rays[c];
    }
    for (auto& cell : out.cells) {
        std::sort(cell.inequalities.begin(), cell.inequalities.end(),
                  [](const Halfspace& a, const Halfspace& b) {
                      return VecLexLess{}(a.normal, b.normal);
                  });
    }
    for (auto& rays : out.cell_rays) std::sort(rays.begin(), rays.end(), VecLexLess{});
    out.adjacent.resize(out.cells.size());
    for (const auto& [key, normal] : wall_map) {
        int a = rankof[key.a], b = rankof[key.b];
        out.walls.push_back({std::min(a, b), std::max(a, b), normal});
        out.adjacent[a].push_back(b);
        out.adjacent[b].push_back(a);
    }
    std::sort(out.walls.begin(), out.walls.end(), [](const auto& x, const auto& y) {
        return std::tie(x.cell_a, x.cell_b) < std::tie(y.cell_a, y.cell_b);
    });
    for (auto& adj : out.adjacent) std::sort(adj.begin(), adj.end());
    return out;
}

int locate_cell(const ChamberComplex& cc, const RationalVector& y) {
    for (const auto& c : cc.cone_facets)
        if (c.dot(y) < 0) return -1;
    for (size_t i = 0; i < cc.cells.size(); ++i)
        if (contains(cc.cells[i], y)) return static_cast<int>(i);
    return -1;
}

std::vector<RationalVector> cell_interior_points(const ChamberComplex& cc, int cell,
                                                 int count, uint64_t seed) {
    const auto& rays = cc.cell_rays.at(cell);
    Rng rng(seed, static_cast<uint64_t>(cell));
    std::vector<RationalVector> out;
    const int n = static_cast<int>(cc.L.rows());
    while (static_cast<int>(out.size()) < count) {
        RationalVector y = RationalVector::Zero(n);
        for (const auto& r : rays) y += Rational(rng.int_in(1, 53), rng.int_in(1, 7)) * r;
        out.push_back(y);
    }
    return out;
}

VPolytope fiber_polytope(const RationalMatrix& L, const RationalVector& y) {
    const int n = static_cast<int>(L.rows()), m = static_cast<int>(L.cols());
    if (y.size() != n) throw structural_error("fiber point has wrong dimension");
    HPolyhedron P;
    P.dim = m;
    for (int i = 0; i < m; ++i) {
        RationalVector e = RationalVector::Zero(m);
        e[i] = 1;
        P.inequalities.push_back({e, Rational(0)});
    }
    for (int r = 0; r < n; ++r) {
        RationalVector row = L.row(r).transpose();
        P.equalities.push_back({row, y[r]});
    }
    return vertex_enumeration(P);
}

FiberChart fiber_chart(const RationalMatrix& L) {
    FiberChart ch;
    ch.S = exactalg::right_inverse(L);
    auto kern = exactalg::nullspace(L);
    ch.B = exactalg::columns_to_matrix(kern, static_cast<int>(L.cols()));
    RationalMatrix BS(L.cols(), L.cols());
    BS.leftCols(ch.B.cols()) = ch.B;
    BS.rightCols(ch.S.cols()) = ch.S;
    ch.jac = exactalg::determinant(BS);
    if (ch.jac < 0) ch.jac = -ch.jac;
    return ch;
}

VPolytope fiber_in_chart(const RationalMatrix& L, const FiberChart& chart,
                         const RationalVector& y) {
    const int m = static_cast<int>(L.cols());
    const int k = static_cast<int>(chart.B.cols());
    RationalVector u0 = chart.S * y;
    HPolyhedron P;
    P.dim = k;
    for (int i = 0; i < m; ++i) {
        // u_i = u0_i + <B.row(i), t> >= 0
        P.inequalities.push_back({chart.B.row(i).transpose(), -u0[i]});
    }
    if (k == 0) {
        // zero-dimensional fiber: the chart point is the origin if feasible
        VPolytope out{0, {}, {}};
        bool feasible = true;
        for (int i = 0; i < m; ++i)
            if (u0[i] < 0) feasible = false;
        if (feasible) out.vertices.push_back(RationalVector::Zero(0));
        return out;
    }
    return vertex_enumeration(P);
}

}  // namespace rieszlab::polyhedra
