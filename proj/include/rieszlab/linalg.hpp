#pragma once

#include <optional>
#include <vector>

#include "rieszlab/rational.hpp"

namespace rieszlab::exactalg {

/// Reduced row echelon form in place; returns the pivot column indices.
std::vector<int> rref(RationalMatrix& M);

int rank(const RationalMatrix& M);

/// Basis of the right kernel {v : Mv = 0}, in the reduced echelon-derived
/// form (one basis vector per free column, unit entry there).
std::vector<RationalVector> nullspace(const RationalMatrix& M);

/// One exact solution of Mx = b, or nullopt when the system is inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& M, const RationalVector& b);

Rational determinant(const RationalMatrix& M);

/// Right inverse S with M S = I; requires full row rank.
RationalMatrix right_inverse(const RationalMatrix& M);

/// det(M^T M) of a matrix whose columns span the chart.
Rational gram_determinant(const RationalMatrix& M);

/// True when v lies in the span of the given vectors.
bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v);

RationalMatrix columns_to_matrix(const std::vector<RationalVector>& cols, int dim);

}  // namespace rieszlab::exactalg
