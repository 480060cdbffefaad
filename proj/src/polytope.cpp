#include "rieszlab/polytope.hpp"

#include <algorithm>
#include <map>

#include "rieszlab/sparse_poly.hpp"

namespace rieszlab::polyhedra {

namespace {

struct LexLess {
    bool operator()(const RationalVector& a, const RationalVector& b) const {
        for (Eigen::Index i = 0; i < a.size(); ++i) {
            if (a[i] != b[i]) return a[i] < b[i];
        }
        return false;
    }
};

struct DdRay {
    RationalVector dir;
    std::vector<bool> tight;  // over inequalities processed so far
};

// Double description with explicit lineality handling. Returns extreme rays
// and the remaining lineality basis of { x : <a,x> >= 0 }.
std::pair<std::vector<DdRay>, std::vector<RationalVector>> dd_core(
    const std::vector<RationalVector>& ineqs, int dim) {
    std::vector<RationalVector> lin;
    for (int i = 0; i < dim; ++i) {
        RationalVector e = RationalVector::Zero(dim);
        e[i] = 1;
        lin.push_back(e);
    }
    std::vector<DdRay> rays;
    const size_t m = ineqs.size();

    // adjacency: rays p,q of the current cone are adjacent iff the
    // inequalities tight for both span a subspace of codimension 2 in the
    // pointed quotient
    auto adjacent = [&](const DdRay& p, const DdRay& q, size_t upto) {
        std::vector<RationalVector> common;
        for (size_t j = 0; j < upto; ++j)
            if (p.tight[j] && q.tight[j]) common.push_back(ineqs[j]);
        if (common.empty()) return dim - static_cast<int>(lin.size()) <= 2;
        RationalMatrix M(static_cast<Eigen::Index>(common.size()), dim);
        for (size_t r = 0; r < common.size(); ++r) M.row(static_cast<Eigen::Index>(r)) = common[r].transpose();
        return exactalg::rank(M) == dim - static_cast<int>(lin.size()) - 2;
    };

    for (size_t k = 0; k < m; ++k) {
        const RationalVector& a = ineqs[k];
        // pivot on a lineality vector not orthogonal to a, if any
        int pivot = -1;
        for (size_t i = 0; i < lin.size(); ++i) {
            if (a.dot(lin[i]) != 0) { pivot = static_cast<int>(i); break; }
        }
        if (pivot >= 0) {
            RationalVector l0 = lin[pivot];
            Rational s0 = a.dot(l0);
            if (s0 < 0) { l0 = -l0; s0 = -s0; }
            std::vector<RationalVector> nl;
            for (size_t i = 0; i < lin.size(); ++i) {
                if (static_cast<int>(i) == pivot) continue;
                nl.push_back(lin[i] - (a.dot(lin[i]) / s0) * l0);
            }
            lin = std::move(nl);
            for (auto& r : rays) {
                r.dir = r.dir - (a.dot(r.dir) / s0) * l0;
                r.dir = integer_primitive(r.dir);
                r.tight.push_back(true);
            }
            DdRay nr;
            nr.dir = integer_primitive(l0);
            nr.tight.assign(k, true);
            nr.tight.push_back(false);
            rays.push_back(std::move(nr));
            continue;
        }
        std::vector<DdRay> plus, zero, minus;
        for (auto& r : rays) {
            Rational v = a.dot(r.dir);
            if (v > 0) plus.push_back(std::move(r));
            else if (v == 0) zero.push_back(std::move(r));
            else minus.push_back(std::move(r));
        }
        std::vector<DdRay> next;
        for (const auto& p : plus) {
            for (const auto& n : minus) {
                if (!adjacent(p, n, k)) continue;
                DdRay w;
                w.dir = integer_primitive(a.dot(p.dir) * n.dir - a.dot(n.dir) * p.dir);
                w.tight.resize(k + 1);
                for (size_t j = 0; j < k; ++j) w.tight[j] = p.tight[j] && n.tight[j];
                w.tight[k] = true;
                next.push_back(std::move(w));
            }
        }
        for (auto& r : plus) {
            r.tight.push_back(false);
            next.push_back(std::move(r));
        }
        for (auto& r : zero) {
            r.tight.push_back(true);
            next.push_back(std::move(r));
        }
        rays = std::move(next);
    }
    return {std::move(rays), std::move(lin)};
}

RationalVector sorted_key(const RationalVector& v) { return sign_canonical_primitive(v); }

}  // namespace

std::vector<RationalVector> cone_extreme_rays(const std::vector<RationalVector>& ineqs, int dim) {
    auto [rays, lin] = dd_core(ineqs, dim);
    if (!lin.empty()) throw structural_error("cone has a nontrivial lineality space");
    std::vector<RationalVector> out;
    out.reserve(rays.size());
    for (auto& r : rays) out.push_back(integer_primitive(r.dir));
    std::sort(out.begin(), out.end(), LexLess{});
    out.erase(std::unique(out.begin(), out.end(),
                          [](const RationalVector& a, const RationalVector& b) { return a == b; }),
              out.end());
    return out;
}

VPolytope vertex_enumeration(const HPolyhedron& P) {
    const int d = P.dim;
    RationalVector x0 = RationalVector::Zero(d);
    RationalMatrix N = RationalMatrix::Identity(d, d);
    if (!P.equalities.empty()) {
        RationalMatrix E(static_cast<Eigen::Index>(P.equalities.size()), d);
        RationalVector eo(static_cast<Eigen::Index>(P.equalities.size()));
        for (size_t i = 0; i < P.equalities.size(); ++i) {
            E.row(static_cast<Eigen::Index>(i)) = P.equalities[i].normal.transpose();
            eo[static_cast<Eigen::Index>(i)] = P.equalities[i].offset;
        }
        auto sol = exactalg::solve(E, eo);
        if (!sol) return VPolytope{d, {}, {}};
        x0 = *sol;
        auto kern = exactalg::nullspace(E);
        N = exactalg::columns_to_matrix(kern, d);
    }
    const int k = static_cast<int>(N.cols());
    if (k == 0) {
        VPolytope out{d, {}, {}};
        if (contains(P, x0)) out.vertices.push_back(x0);
        return out;
    }
    // homogenized cone in (z, t)
    std::vector<RationalVector> cone_ineqs;
    for (const auto& h : P.inequalities) {
        RationalVector a(k + 1);
        a.head(k) = N.transpose() * h.normal;
        a[k] = h.normal.dot(x0) - h.offset;
        cone_ineqs.push_back(integer_primitive(a));
    }
    {
        RationalVector t = RationalVector::Zero(k + 1);
        t[k] = 1;
        cone_ineqs.push_back(t);
    }
    std::vector<RationalVector> rays;
    try {
        rays = cone_extreme_rays(cone_ineqs, k + 1);
    } catch (const structural_error&) {
        throw structural_error("polyhedron is unbounded and not pointed");
    }
    VPolytope out{d, {}, {}};
    std::vector<RationalVector> rec;
    for (const auto& r : rays) {
        if (r[k] > 0) {
            RationalVector z = r.head(k) / r[k];
            out.vertices.push_back(x0 + N * z);
        } else {
            rec.push_back(N * r.head(k));
        }
    }
    if (out.vertices.empty()) return VPolytope{d, {}, {}};
    for (auto& r : rec) out.rays.push_back(integer_primitive(r));
    std::sort(out.vertices.begin(), out.vertices.end(), LexLess{});
    out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end(),
                                   [](const RationalVector& a, const RationalVector& b) { return a == b; }),
                       out.vertices.end());
    std::sort(out.rays.begin(), out.rays.end(), LexLess{});
    return out;
}

namespace {

// Chart of the affine hull: base point and an exact basis of the direction
// space, chosen among vertex differences and rays.
struct Chart {
    RationalVector base;            // in ambient coordinates
    RationalMatrix basis;           // d x k
    RationalMatrix coords;          // k x d, coords = (B^T B)^-1 B^T
};

Chart affine_chart(const VPolytope& P) {
    const int d = P.dim;
    Chart ch;
    ch.base = P.vertices.at(0);
    std::vector<RationalVector> dirs;
    for (size_t i = 1; i < P.vertices.size(); ++i) dirs.push_back(P.vertices[i] - ch.base);
    for (const auto& r : P.rays) dirs.push_back(r);
    // greedy independent subset
    std::vector<RationalVector> basis;
    for (const auto& v : dirs) {
        std::vector<RationalVector> trial = basis;
        trial.push_back(v);
        RationalMatrix M = exactalg::columns_to_matrix(trial, d);
        if (exactalg::rank(M) == static_cast<int>(trial.size())) basis = std::move(trial);
    }
    ch.basis = exactalg::columns_to_matrix(basis, d);
    if (!basis.empty()) {
        RationalMatrix G = ch.basis.transpose() * ch.basis;
        RationalMatrix Ginv = exactalg::right_inverse(G);  // G square invertible
        ch.coords = Ginv * ch.basis.transpose();
    } else {
        ch.coords = RationalMatrix::Zero(0, d);
    }
    return ch;
}

std::vector<RationalVector> chart_points(const Chart& ch, const std::vector<RationalVector>& pts) {
    std::vector<RationalVector> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(ch.coords * (p - ch.base));
    return out;
}

// facets of a full-dimensional polytope given by chart points/rays:
// rays (w, w0) of the dual cone of the homogenization
std::vector<std::pair<RationalVector, Rational>> chart_facets(
    const std::vector<RationalVector>& pts, const std::vector<RationalVector>& rays, int k) {
    std::vector<RationalVector> gens;
    for (const auto& p : pts) {
        RationalVector g(k + 1);
        g.head(k) = p;
        g[k] = 1;
        gens.push_back(g);
    }
    for (const auto& r : rays) {
        RationalVector g(k + 1);
        g.head(k) = r;
        g[k] = 0;
        gens.push_back(g);
    }
    auto duals = cone_extreme_rays(gens, k + 1);
    std::vector<std::pair<RationalVector, Rational>> out;
    for (const auto& w : duals) {
        RationalVector normal = w.head(k);
        bool zero = true;
        for (int i = 0; i < k; ++i)
            if (normal[i] != 0) zero = false;
        if (zero) continue;  // the t >= 0 facet, not a geometric one
        out.push_back({normal, -w[k]});  // <normal, z> >= -w[k]
    }
    return out;
}

void triangulate_rec(const std::vector<RationalVector>& verts, const std::vector<int>& idx,
                     std::vector<std::vector<int>>& out, std::vector<int> prefix) {
    // verts: ambient coordinates of the subset being triangulated, idx: their
    // indices in the original polytope
    VPolytope sub;
    sub.dim = static_cast<int>(verts.front().size());
    sub.vertices = verts;
    Chart ch = affine_chart(sub);
    const int k = static_cast<int>(ch.basis.cols());
    if (static_cast<int>(verts.size()) == k + 1) {
        std::vector<int> simplex = prefix;
        simplex.insert(simplex.end(), idx.begin(), idx.end());
        out.push_back(std::move(simplex));
        return;
    }
    auto pts = chart_points(ch, verts);
    auto facets = chart_facets(pts, {}, k);
    // fan from the lexicographically least vertex (ambient order)
    int apex = 0;
    for (size_t i = 1; i < verts.size(); ++i)
        if (LexLess{}(verts[i], verts[apex])) apex = static_cast<int>(i);
    std::vector<int> next_prefix = prefix;
    next_prefix.push_back(idx[apex]);
    for (const auto& [w, w0] : facets) {
        if (w.dot(pts[apex]) == w0) continue;  // facet contains the apex
        std::vector<RationalVector> fverts;
        std::vector<int> fidx;
        for (size_t i = 0; i < verts.size(); ++i) {
            if (w.dot(pts[i]) == w0) {
                fverts.push_back(verts[i]);
                fidx.push_back(idx[i]);
            }
        }
        triangulate_rec(fverts, fidx, out, next_prefix);
    }
}

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

std::vector<std::vector<int>> triangulate(const VPolytope& P) {
    if (!P.rays.empty()) throw structural_error("triangulation requires a bounded polytope");
    std::vector<std::vector<int>> out;
    if (P.vertices.empty()) return out;
    std::vector<int> idx(P.vertices.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    triangulate_rec(P.vertices, idx, out, {});
    std::sort(out.begin(), out.end());
    return out;
}

HPolyhedron facet_enumeration(const VPolytope& P) {
    if (P.empty()) throw structural_error("facet enumeration of the empty polytope");
    HPolyhedron out;
    out.dim = P.dim;
    Chart ch = affine_chart(P);
    const int k = static_cast<int>(ch.basis.cols());
    // affine-hull equalities
    if (k < P.dim) {
        RationalMatrix Bt = ch.basis.transpose();
        auto orth = exactalg::nullspace(Bt);
        for (const auto& n : orth) {
            RationalVector nn = sign_canonical_primitive(n);
            out.equalities.push_back({nn, nn.dot(ch.base)});
        }
    }
    if (k == 0) return out;
    auto pts = chart_points(ch, P.vertices);
    std::vector<RationalVector> crays;
    for (const auto& r : P.rays) crays.push_back(ch.coords * r);
    for (const auto& [w, w0] : chart_facets(pts, crays, k)) {
        RationalVector wa = ch.coords.transpose() * w;
        Rational beta = wa.dot(ch.base) + w0;
        RationalVector prim = integer_primitive(wa);
        // keep orientation: scale offset consistently
        Rational scale(1);
        for (Eigen::Index i = 0; i < wa.size(); ++i) {
            if (wa[i] != 0) { scale = prim[i] / wa[i]; break; }
        }
        out.inequalities.push_back({prim, beta * scale});
    }
    std::sort(out.inequalities.begin(), out.inequalities.end(),
              [](const Halfspace& a, const Halfspace& b) {
                  if (a.offset != b.offset) return a.offset < b.offset;
                  return LexLess{}(a.normal, b.normal);
              });
    return out;
}

HPolyhedron canonicalize(const HPolyhedron& P) {
    VPolytope V = vertex_enumeration(P);
    if (V.empty()) {
        HPolyhedron out;
        out.dim = P.dim;
        // infeasible: keep a canonical witness of emptiness
        RationalVector z = RationalVector::Zero(P.dim);
        out.inequalities.push_back({z, Rational(1)});
        return out;
    }
    return facet_enumeration(V);
}

bool contains(const HPolyhedron& P, const RationalVector& x, bool strict) {
    for (const auto& h : P.equalities)
        if (h.normal.dot(x) != h.offset) return false;
    for (const auto& h : P.inequalities) {
        Rational v = h.normal.dot(x);
        if (strict ? !(v > h.offset) : !(v >= h.offset)) return false;
    }
    return true;
}

ScaledValue volume(const VPolytope& P) {
    return integrate_monomial(P, std::vector<int>(P.dim, 0));
}

ScaledValue integrate_monomial(const VPolytope& P, const std::vector<int>& exponents) {
    if (static_cast<int>(exponents.size()) != P.dim)
        throw structural_error("exponent vector length mismatch");
    if (!P.rays.empty()) throw structural_error("integration requires a bounded polytope");
    if (P.vertices.empty()) return {Rational(0), Rational(1)};
    Chart ch = affine_chart(P);
    int k = static_cast<int>(ch.basis.cols());
    Rational gram(1);
    if (k == P.dim) {
        // full-dimensional: integrate in ambient coordinates directly
        ch.basis = RationalMatrix::Identity(P.dim, P.dim);
        ch.coords = ch.basis;
        ch.base = RationalVector::Zero(P.dim);
    } else {
        gram = exactalg::gram_determinant(ch.basis);
    }
    if (k == 0) {
        Rational v(1);
        for (int i = 0; i < P.dim; ++i)
            v *= pow_rational(P.vertices[0][i], exponents[i]);
        return {v, Rational(1)};
    }
    auto pts = chart_points(ch, P.vertices);
    auto simplices = triangulate(P);
    auto lambda_vars = exactalg::default_vars(k + 1, "l");
    Rational total(0);
    for (const auto& simplex : simplices) {
        RationalMatrix edges(k, k);
        for (int j = 1; j <= k; ++j)
            edges.col(j - 1) = pts[simplex[j]] - pts[simplex[0]];
        Rational det = exactalg::determinant(edges);
        if (det < 0) det = -det;
        if (det == 0) continue;
        // expand prod u_i^{e_i} with u = sum_j lambda_j * vertex_j
        exactalg::SparsePoly f = exactalg::SparsePoly::constant(lambda_vars, Rational(1));
        for (int i = 0; i < P.dim; ++i) {
            if (exponents[i] == 0) continue;
            RationalVector coeffs(k + 1);
            for (int j = 0; j <= k; ++j) coeffs[j] = P.vertices[simplex[j]][i];
            auto lf = exactalg::SparsePoly::linear_form(lambda_vars, coeffs, Rational(0));
            f = f * lf.pow(static_cast<unsigned>(exponents[i]));
        }
        Rational piece(0);
        for (const auto& [a, c] : f.terms()) {
            Rational num(1);
            int tot = 0;
            for (int j = 0; j <= k; ++j) {
                num *= factorial(a[j]);
                tot += a[j];
            }
            piece += c * num / factorial(k + tot);
        }
        total += det * piece;  // det = k! * chart volume of the simplex
    }
    return {total, gram};
}

int affine_dimension(const VPolytope& P) {
    if (P.empty()) return -1;
    if (P.vertices.empty()) return 0;
    Chart ch = affine_chart(P);
    return static_cast<int>(ch.basis.cols());
}

RationalVector generalized_cross(const std::vector<RationalVector>& cols, int dim) {
    if (static_cast<int>(cols.size()) != dim - 1)
        throw structural_error("generalized cross product needs dim-1 vectors");
    RationalVector w(dim);
    if (dim == 1) {
        w[0] = 1;
        return w;
    }
    RationalMatrix M(dim, dim - 1);
    for (int j = 0; j < dim - 1; ++j) M.col(j) = cols[j];
    for (int i = 0; i < dim; ++i) {
        RationalMatrix minor(dim - 1, dim - 1);
        int r = 0;
        for (int row = 0; row < dim; ++row) {
            if (row == i) continue;
            minor.row(r++) = M.row(row);
        }
        Rational c = exactalg::determinant(minor);
        w[i] = ((dim - 1 - i) % 2 == 0) ? c : -c;
    }
    return w;
}

}  // namespace rieszlab::polyhedra
