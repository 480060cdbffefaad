#pragma once

#include "rieszlab/polytope.hpp"

namespace rieszlab::polyhedra {

/// Maximal cones of the common refinement of the cones spanned by
/// linearly independent column subsets of L, restricted to cone(L).
struct ChamberComplex {
    RationalMatrix L;
    std::vector<HPolyhedron> cells;  // facet-canonical H-representations
    std::vector<std::vector<RationalVector>> cell_rays;
    struct Wall {
        int cell_a, cell_b;
        RationalVector normal;  // sign-canonical primitive
    };
    std::vector<Wall> walls;
    std::vector<std::vector<int>> adjacent;  // per-cell neighbor indices
    std::vector<RationalVector> hyperplanes;  // all wall candidate normals
    std::vector<RationalVector> cone_facets;  // facet normals of cone(L)
};

struct degenerate_input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Chamber complex of an n x m matrix whose columns span R^n and span a
/// pointed cone. Walls are recorded with the shared facet normal; the cell
/// order is normalized so the output is deterministic.
ChamberComplex chamber_complex(const RationalMatrix& L);

/// Index of a maximal cell whose closure contains y (lowest index on walls);
/// -1 when y is outside cone(L).
int locate_cell(const ChamberComplex& cc, const RationalVector& y);

/// Deterministic interior points of a cell, as positive ray combinations.
std::vector<RationalVector> cell_interior_points(const ChamberComplex& cc, int cell,
                                                 int count, uint64_t seed);

/// The fiber { u >= 0 : L u = y } as a polytope in R^m; empty when y is
/// outside cone(L).
VPolytope fiber_polytope(const RationalMatrix& L, const RationalVector& y);

/// Kernel-coordinate chart of the fibers: u = S y + B t with S a rational
/// right inverse of L and B a kernel basis; jac = |det [B S]| converts
/// t-space volumes into pushforward densities.
struct FiberChart {
    RationalMatrix S;
    RationalMatrix B;
    Rational jac;
};

FiberChart fiber_chart(const RationalMatrix& L);

/// The fiber in chart coordinates: { t : B t >= -S y } as a V-polytope in
/// R^{m-n}.
VPolytope fiber_in_chart(const RationalMatrix& L, const FiberChart& chart,
                         const RationalVector& y);

}  // namespace rieszlab::polyhedra
