#pragma once

#include <json.hpp>
#include <optional>

#include "rieszlab/certify.hpp"
#include "rieszlab/chamber.hpp"
#include "rieszlab/convalg.hpp"
#include "rieszlab/kernels.hpp"

namespace rieszlab::docs {

using nlohmann::json;

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Floats in documents carry 12 significant digits, as strings, so output
/// bytes are reproducible.
std::string format_double(double v);

json rational_to_json(const Rational& q);
Rational rational_from_json(const json& j);

json matrix_to_json(const RationalMatrix& M);
RationalMatrix matrix_from_json(const json& j);

json vector_to_json(const RationalVector& v);
RationalVector vector_from_json(const json& j);

json poly_to_json(const exactalg::SparsePoly& p);
exactalg::SparsePoly poly_from_json(const json& j);

json chamber_to_json(const polyhedra::ChamberComplex& cc);
json piecewise_kernel_to_json(const kernels::PiecewiseKernel& k);
json closed_form_to_json(const kernels::ClosedFormKernel& k);
json generators_to_json(const std::vector<exactalg::SparsePoly>& gens);
json hyperbolicity_to_json(const hyperbolicity::HyperbolicityReport& rep);

json certificate_to_json(const certify::Certificate& cert);
certify::Certificate certificate_from_json(const json& j);

/// One problem statement as read from an input file.
struct ProblemSpec {
    std::string kind;  // linear_forms | named_polynomial | raw_polynomial
    std::optional<RationalMatrix> linear_forms;
    std::vector<Rational> alpha;             // per-form exponents
    std::optional<exactalg::SparsePoly> polynomial;
    std::optional<Rational> s;               // power (f = p^s)
    std::optional<RationalVector> e;         // direction
    std::string name;                        // named_polynomial selector
    int m = 0, n = 0;
    Rational v = Rational(1);
    std::optional<RationalVector> x;         // Laplace check point
    std::vector<double> y;                   // pointwise evaluation argument
    // resolved numeric configuration
    special::QuadratureConfig quad;
    int max_order = 8;
    int trials = 200;
};

ProblemSpec problem_from_json(const json& j);
ProblemSpec load_problem(const std::string& path);

/// Matrix-only input file (fields rows, cols, entries).
RationalMatrix load_matrix(const std::string& path);

json config_to_json(const special::QuadratureConfig& quad, int max_order, int trials);

}  // namespace rieszlab::docs
