#pragma once

#include <optional>

#include "rieszlab/sparse_poly.hpp"
#include "rieszlab/univariate.hpp"

namespace rieszlab::hyperbolicity {

using exactalg::SparsePoly;
using exactalg::UnivariatePoly;

/// Homogeneous p with a direction e where p(e) > 0; candidate for the
/// real-rootedness test of t -> p(t*e - x).
struct HyperbolicInstance {
    SparsePoly p;
    RationalVector e;
    int degree = 0;

    static HyperbolicInstance make(SparsePoly p, RationalVector e);
};

/// E_{m,n}: sum of all m-fold products of distinct variables among n.
SparsePoly elementary_symmetric(int m, int n);

/// The symmetric 2x2 determinant x11*x22 - x12^2 in (x11, x12, x22), with
/// the identity direction (1, 0, 1).
HyperbolicInstance symmetric_determinant_2x2();

/// t -> p(t*e - x) as a univariate polynomial.
UnivariatePoly direction_restriction(const SparsePoly& p, const RationalVector& e,
                                     const RationalVector& x);

struct HyperbolicityReport {
    bool passed = false;
    int trials = 0;
    uint64_t seed = 0;
    std::optional<RationalVector> witness;  // set on failure
    int nonreal_roots = 0;                  // distinct nonreal roots at the witness
    std::string note;
};

/// Randomized hyperbolicity test: `trials` seeded rational points x, each
/// checked exactly by Sturm sequences. A failure is a certificate; a pass is
/// evidence, not proof.
HyperbolicityReport hyperbolicity_check(const HyperbolicInstance& inst, int trials,
                                        uint64_t seed);

/// True iff every root of t -> p(t*e - x) is real and strictly positive
/// (open-cone semantics: boundary points report false).
bool cone_membership(const HyperbolicInstance& inst, const RationalVector& x);

}  // namespace rieszlab::hyperbolicity
