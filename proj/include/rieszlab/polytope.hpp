#pragma once

#include <utility>
#include <vector>

#include "rieszlab/linalg.hpp"

namespace rieszlab::polyhedra {

/// H-representation: { x : <normal,x> >= offset for each inequality,
///                         <normal,x> = offset for each equality }.
struct Halfspace {
    RationalVector normal;
    Rational offset;
};

struct HPolyhedron {
    int dim = 0;
    std::vector<Halfspace> inequalities;
    std::vector<Halfspace> equalities;
};

/// V-representation: conv(vertices) + cone(rays). Bounded iff rays empty.
struct VPolytope {
    int dim = 0;
    std::vector<RationalVector> vertices;
    std::vector<RationalVector> rays;
    bool empty() const { return vertices.empty() && rays.empty(); }
};

/// A quantity r * sqrt(s) with r, s rational; s is the Gram determinant of
/// the affine chart used (1 for full-dimensional polytopes).
struct ScaledValue {
    Rational value;
    Rational gram;
};

/// Extreme rays of the cone { x : <a,x> >= 0 for all a }, via the double
/// description method. Throws structural_error when the cone has a
/// nontrivial lineality space.
std::vector<RationalVector> cone_extreme_rays(const std::vector<RationalVector>& ineqs, int dim);

/// Exact vertices and rays, no duplicates, deterministic order.
/// Errors on polyhedra with a nontrivial lineality space.
VPolytope vertex_enumeration(const HPolyhedron& P);

/// Inverse of vertex_enumeration: irredundant inequalities (facets) plus
/// the affine-hull equalities.
HPolyhedron facet_enumeration(const VPolytope& P);

/// Primitive integer normals, duplicates and redundant inequalities removed.
HPolyhedron canonicalize(const HPolyhedron& P);

bool contains(const HPolyhedron& P, const RationalVector& x, bool strict = false);

/// Triangulation of a bounded polytope by fanning from the lexicographically
/// least vertex at every level; simplices index into P.vertices.
std::vector<std::vector<int>> triangulate(const VPolytope& P);

/// Volume with respect to Lebesgue measure in the affine hull, as r*sqrt(s).
ScaledValue volume(const VPolytope& P);

/// Exact integral of prod_i u_i^{exponents[i]} over P within its affine
/// hull, as r*sqrt(s); exponents live in the ambient coordinates.
ScaledValue integrate_monomial(const VPolytope& P, const std::vector<int>& exponents);

/// Vector w with <w,y> = det(cols[0],...,cols[n-2],y); cols are n-vectors.
RationalVector generalized_cross(const std::vector<RationalVector>& cols, int dim);

/// Dimension of the affine hull (-1 for the empty polytope).
int affine_dimension(const VPolytope& P);

}  // namespace rieszlab::polyhedra
