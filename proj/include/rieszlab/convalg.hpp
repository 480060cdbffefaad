#pragma once

#include "rieszlab/linalg.hpp"
#include "rieszlab/sparse_poly.hpp"

namespace rieszlab::convalg {

using exactalg::SparsePoly;

/// A minimal linearly dependent set of columns of L with its (essentially
/// unique) dependence: sum_i coefficients[i] * column(support[i]) = 0. The
/// coefficient vector is primitive integer with positive first entry.
struct Circuit {
    std::vector<int> support;       // sorted column indices
    std::vector<Rational> coefficients;
};

/// All circuits, by support-set scan in increasing size. A guard rejects
/// matrices with more than 16 columns (the scan is exponential).
std::vector<Circuit> circuits(const RationalMatrix& L);

/// sum_{i in support} c_i prod_{j in support, j != i} z_j, sign-normalized
/// so the leading term (graded lex) has positive coefficient.
SparsePoly circuit_polynomial(const Circuit& c, int m);

/// circuit_polynomial applied to every circuit, deterministic order.
std::vector<SparsePoly> orlik_terao_generators(const RationalMatrix& L);

}  // namespace rieszlab::convalg
