#pragma once

#include <utility>
#include <vector>

#include "rieszlab/sparse_poly.hpp"

namespace rieszlab::exactalg {

struct interpolation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// All exponent vectors in `dimension` variables of total degree exactly
/// `degree` (homogeneous) or at most `degree`, in graded lex order.
std::vector<std::vector<int>> monomial_basis(int degree, int dimension, bool homogeneous);

/// The unique polynomial of the stated degree matching all samples exactly.
/// Throws interpolation_error naming the rank defect when the system is
/// underdetermined, and when the samples are inconsistent with the degree.
SparsePoly interpolate(int degree, int dimension,
                       const std::vector<std::pair<RationalVector, Rational>>& samples,
                       bool homogeneous,
                       const std::vector<std::string>& vars = {});

}  // namespace rieszlab::exactalg
