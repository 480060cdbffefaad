#pragma once

#include "rieszlab/chamber.hpp"
#include "rieszlab/sparse_poly.hpp"
#include "rieszlab/special_fns.hpp"

namespace rieszlab::kernels {

using exactalg::SparsePoly;

/// Piecewise-polynomial kernel of a product of negative integer powers of
/// linear forms: one homogeneous polynomial per maximal chamber cell.
struct PiecewiseKernel {
    polyhedra::ChamberComplex complex;
    std::vector<SparsePoly> pieces;  // in y-variables, one per cell
    std::vector<long> alpha;
    int total_degree = 0;      // sum(alpha) - n
    // guaranteed agreement order of adjacent pieces across every wall;
    // equals total_degree - 1 unless a wall hyperplane carries extra
    // column multiplicity
    int smoothness_order = 0;
};

/// Exact kernel of prod_i l_i^{-alpha_i} for integer alpha_i >= 1, built by
/// replicating columns, measuring exact fiber volumes in kernel coordinates
/// and interpolating the per-chamber homogeneous polynomial.
PiecewiseKernel kernel_linear_forms(const RationalMatrix& L, const std::vector<long>& alpha);

/// Exact evaluation; 0 outside cone(L), either piece on a wall.
Rational evaluate(const PiecewiseKernel& k, const RationalVector& y);

/// Double-precision evaluator for sampling-heavy callers.
class PiecewiseKernelEvaluator {
  public:
    explicit PiecewiseKernelEvaluator(const PiecewiseKernel& k);
    double operator()(const std::vector<double>& y) const;
    int dim() const { return dim_; }

  private:
    struct Cell {
        std::vector<std::vector<double>> normals;
        std::vector<std::pair<std::vector<int>, double>> terms;
    };
    std::vector<std::vector<double>> cone_facets_;
    std::vector<Cell> cells_;
    int dim_;
};

/// Pointwise kernel value of prod l_i^{-alpha_i} by exact monomial
/// integration over the unreplicated fiber (Dirichlet weights). Independent
/// of the interpolation route above.
Rational kernel_value_exact(const RationalMatrix& L, const std::vector<long>& alpha,
                            const RationalVector& y);

/// Pointwise kernel value for arbitrary real alpha_i > 0 by numeric fiber
/// quadrature (exact chart, adaptive integration over a triangulation).
double kernel_value_numeric(const RationalMatrix& L, const std::vector<double>& alpha,
                            const RationalVector& y, const special::QuadratureConfig& cfg);

/// kernel value times prod Gamma(alpha_i); the hypergeometric fiber integral.
double aomoto_gelfand_phi(const RationalMatrix& L, const std::vector<double>& alpha,
                          const RationalVector& y, const special::QuadratureConfig& cfg);

/// Closed-form kernels for the special polynomial families.
struct ClosedFormKernel {
    enum class Kind { monomial, e23, e24, determinant, cubic_2f1 };
    Kind kind;
    Rational alpha;                 // all kinds except monomial
    std::vector<Rational> alphas;   // monomial
    int m = 0;                      // determinant: matrix size
    Rational v;                     // cubic_2f1: third column parameter

    static ClosedFormKernel monomial(std::vector<Rational> alphas);
    static ClosedFormKernel e23(const Rational& alpha);
    static ClosedFormKernel e24(const Rational& alpha);
    static ClosedFormKernel determinant(int m, const Rational& alpha);
    static ClosedFormKernel cubic_2f1(const Rational& v, const Rational& alpha);
};

/// Pointwise value (0 outside the support).
double closed_form_kernel(const ClosedFormKernel& k, const std::vector<double>& y);

/// Exact support decision at a rational point.
bool closed_form_support(const ClosedFormKernel& k, const RationalVector& y);

/// Dimension of the kernel's argument.
int closed_form_dim(const ClosedFormKernel& k);

/// Stage kernel q(alpha)(y1..y5): a 1-D integral pairing the e24 kernel in
/// (y1,y2,y3,s) with the e23 kernel in (y4,y5,s) against Gamma(alpha)
/// s^{1-alpha} ds. This is the kernel of (Q4 + x5 E24)^{-alpha}.
double kernel_e35_stage(double alpha, const std::vector<double>& y,
                        const special::QuadratureConfig& cfg);

}  // namespace rieszlab::kernels
