#include "rieszlab/kernels.hpp"

#include <cmath>

#include "rieszlab/interpolate.hpp"

namespace rieszlab::kernels {

namespace {

RationalMatrix replicate_columns(const RationalMatrix& L, const std::vector<long>& alpha) {
    long total = 0;
    for (long a : alpha) total += a;
    RationalMatrix out(L.rows(), total);
    Eigen::Index c = 0;
    for (Eigen::Index j = 0; j < L.cols(); ++j)
        for (long k = 0; k < alpha[j]; ++k) out.col(c++) = L.col(j);
    return out;
}

void check_alpha(const RationalMatrix& L, const std::vector<long>& alpha) {
    if (static_cast<Eigen::Index>(alpha.size()) != L.cols())
        throw structural_error("alpha length must match the number of linear forms");
    long total = 0;
    for (long a : alpha) {
        if (a < 1) throw domain_error("integer exponents must be >= 1");
        total += a;
    }
    // enumeration over the replicated fibers grows quickly with dimension
    if (total - L.rows() > 16)
        throw domain_error("replicated fiber dimension above 16 is not supported");
}

}  // namespace

PiecewiseKernel kernel_linear_forms(const RationalMatrix& L, const std::vector<long>& alpha) {
    check_alpha(L, alpha);
    const int n = static_cast<int>(L.rows());
    PiecewiseKernel k;
    k.complex = polyhedra::chamber_complex(L);
    k.alpha = alpha;
    long total = 0;
    for (long a : alpha) total += a;
    const int degree = static_cast<int>(total) - n;
    k.total_degree = degree;
    // the jump across a wall vanishes to the number of replicated columns
    // off that wall's hyperplane, minus one; when every wall hyperplane
    // holds exactly n-1 columns this is the generic bound degree-1
    k.smoothness_order = degree - 1;
    for (const auto& wall : k.complex.walls) {
        long off = 0;
        for (Eigen::Index j = 0; j < L.cols(); ++j)
            if (wall.normal.dot(L.col(j)) != 0) off += alpha[j];
        k.smoothness_order = std::min<int>(k.smoothness_order, static_cast<int>(off) - 2);
    }

    RationalMatrix Lrep = replicate_columns(L, alpha);
    polyhedra::FiberChart chart = polyhedra::fiber_chart(Lrep);
    auto yvars = exactalg::default_vars(n, "y");
    const size_t ncoef = exactalg::monomial_basis(degree, n, true).size();

    for (size_t cell = 0; cell < k.complex.cells.size(); ++cell) {
        SparsePoly piece;
        bool done = false;
        for (int batch = 0; batch < 3 && !done; ++batch) {
            auto pts = polyhedra::cell_interior_points(
                k.complex, static_cast<int>(cell), static_cast<int>(ncoef) + 2 + batch,
                0x9a11 + 131 * batch);
            std::vector<std::pair<RationalVector, Rational>> samples;
            for (const auto& y : pts) {
                polyhedra::VPolytope fiber = polyhedra::fiber_in_chart(Lrep, chart, y);
                polyhedra::ScaledValue vol = polyhedra::volume(fiber);
                if (vol.gram != 1)
                    throw structural_error("fiber volume chart is not full-dimensional");
                samples.push_back({y, vol.value * chart.jac});
            }
            try {
                piece = exactalg::interpolate(degree, n, samples, true, yvars);
                done = true;
            } catch (const exactalg::interpolation_error&) {
                if (batch == 2) throw;
            }
        }
        k.pieces.push_back(piece);
    }
    return k;
}

Rational evaluate(const PiecewiseKernel& k, const RationalVector& y) {
    int cell = polyhedra::locate_cell(k.complex, y);
    if (cell < 0) return Rational(0);
    return k.pieces[cell].evaluate(y);
}

PiecewiseKernelEvaluator::PiecewiseKernelEvaluator(const PiecewiseKernel& k) {
    dim_ = static_cast<int>(k.complex.L.rows());
    for (const auto& f : k.complex.cone_facets) {
        std::vector<double> n(dim_);
        for (int i = 0; i < dim_; ++i) n[i] = to_double(f[i]);
        cone_facets_.push_back(std::move(n));
    }
    for (size_t c = 0; c < k.complex.cells.size(); ++c) {
        Cell cell;
        for (const auto& h : k.complex.cells[c].inequalities) {
            std::vector<double> n(dim_);
            for (int i = 0; i < dim_; ++i) n[i] = to_double(h.normal[i]);
            cell.normals.push_back(std::move(n));
        }
        for (const auto& [e, q] : k.pieces[c].terms())
            cell.terms.push_back({e, to_double(q)});
        cells_.push_back(std::move(cell));
    }
}

double PiecewiseKernelEvaluator::operator()(const std::vector<double>& y) const {
    double scale = 1.0;
    for (double v : y) scale += std::abs(v);
    const double tol = -1e-12 * scale;
    for (const auto& f : cone_facets_) {
        double s = 0;
        for (int i = 0; i < dim_; ++i) s += f[i] * y[i];
        if (s < tol) return 0.0;
    }
    for (const auto& cell : cells_) {
        bool inside = true;
        for (const auto& n : cell.normals) {
            double s = 0;
            for (int i = 0; i < dim_; ++i) s += n[i] * y[i];
            if (s < tol) {
                inside = false;
                break;
            }
        }
        if (!inside) continue;
        double out = 0;
        for (const auto& [e, c] : cell.terms) {
            double t = c;
            for (int i = 0; i < dim_; ++i)
                for (int p = 0; p < e[i]; ++p) t *= y[i];
            out += t;
        }
        return out;
    }
    return 0.0;
}

namespace {

Rational factorial_rational(long n) {
    Rational f(1);
    for (long i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

Rational kernel_value_exact(const RationalMatrix& L, const std::vector<long>& alpha,
                            const RationalVector& y) {
    check_alpha(L, alpha);
    const int m = static_cast<int>(L.cols());
    polyhedra::FiberChart chart = polyhedra::fiber_chart(L);
    polyhedra::VPolytope T = polyhedra::fiber_in_chart(L, chart, y);
    if (T.empty()) return Rational(0);
    Rational gammas(1);
    for (long a : alpha) gammas *= factorial_rational(a - 1);
    RationalVector u0 = chart.S * y;
    const int kdim = static_cast<int>(chart.B.cols());
    // a collapsed fiber (y on the cone boundary) carries no volume
    if (kdim > 0 && polyhedra::affine_dimension(T) < kdim) return Rational(0);
    if (kdim == 0) {
        Rational val(1);
        for (int i = 0; i < m; ++i) val *= pow_rational(u0[i], alpha[i] - 1);
        return val * chart.jac / gammas;
    }
    // expand prod_i u_i(t)^{alpha_i - 1} as a polynomial in t and integrate
    // monomial by monomial over the chart fiber
    auto tvars = exactalg::default_vars(kdim, "t");
    SparsePoly f = SparsePoly::constant(tvars, Rational(1));
    for (int i = 0; i < m; ++i) {
        if (alpha[i] == 1) continue;
        auto lf = SparsePoly::linear_form(tvars, chart.B.row(i).transpose(), u0[i]);
        f = f * lf.pow(static_cast<unsigned>(alpha[i] - 1));
    }
    Rational total(0);
    for (const auto& [e, c] : f.terms()) {
        polyhedra::ScaledValue r = polyhedra::integrate_monomial(T, e);
        if (r.gram != 1) throw structural_error("chart fiber is not full-dimensional");
        total += c * r.value;
    }
    return total * chart.jac / gammas;
}

namespace {

// adaptive integration of g over the standard simplex {l >= 0, sum l <= 1}
// in kdim variables, iterated one axis at a time
double simplex_integral(const std::function<double(const std::vector<double>&)>& g, int kdim,
                        double rel_tol, int max_subdiv) {
    std::vector<double> lambda(kdim, 0.0);
    std::function<double(int, double)> level = [&](int axis, double remaining) -> double {
        auto f1 = [&](double t) {
            lambda[axis] = t;
            if (axis == kdim - 1) return g(lambda);
            return level(axis + 1, remaining - t);
        };
        auto r = special::integrate_adaptive_regularized(f1, 0.0, remaining, rel_tol,
                                                         max_subdiv, 3);
        lambda[axis] = 0.0;
        return r.value;
    };
    if (kdim == 0) return g(lambda);
    return level(0, 1.0);
}

}  // namespace

double kernel_value_numeric(const RationalMatrix& L, const std::vector<double>& alpha,
                            const RationalVector& y, const special::QuadratureConfig& cfg) {
    const int m = static_cast<int>(L.cols());
    if (static_cast<int>(alpha.size()) != m)
        throw structural_error("alpha length must match the number of linear forms");
    for (double a : alpha)
        if (!(a > 0)) throw domain_error("exponents must be positive");
    polyhedra::FiberChart chart = polyhedra::fiber_chart(L);
    polyhedra::VPolytope T = polyhedra::fiber_in_chart(L, chart, y);
    if (T.empty()) return 0.0;
    double gammas = 1.0;
    for (double a : alpha) gammas *= special::gamma_fn(a);
    RationalVector u0 = chart.S * y;
    const int kdim = static_cast<int>(chart.B.cols());
    if (kdim > 0 && polyhedra::affine_dimension(T) < kdim) return 0.0;
    double jac = to_double(chart.jac);
    if (kdim == 0) {
        double val = 1.0;
        for (int i = 0; i < m; ++i) val *= std::pow(to_double(u0[i]), alpha[i] - 1.0);
        return val * jac / gammas;
    }
    // doubles for the affine fiber map u = u0 + B t
    std::vector<double> u0d(m);
    std::vector<std::vector<double>> Bd(m, std::vector<double>(kdim));
    for (int i = 0; i < m; ++i) {
        u0d[i] = to_double(u0[i]);
        for (int j = 0; j < kdim; ++j) Bd[i][j] = to_double(chart.B(i, j));
    }
    auto simplices = polyhedra::triangulate(T);
    std::vector<std::vector<double>> verts;
    for (const auto& v : T.vertices) {
        std::vector<double> p(kdim);
        for (int j = 0; j < kdim; ++j) p[j] = to_double(v[j]);
        verts.push_back(std::move(p));
    }
    const double rel_tol = std::max(cfg.rel_tol, 1e-8);
    double total = 0;
    std::vector<double> t(kdim);
    for (const auto& s : simplices) {
        // |det| of the edge matrix
        Eigen::MatrixXd E(kdim, kdim);
        for (int j = 1; j <= kdim; ++j)
            for (int i = 0; i < kdim; ++i) E(i, j - 1) = verts[s[j]][i] - verts[s[0]][i];
        double det = std::abs(E.determinant());
        if (det == 0.0) continue;
        auto integrand = [&](const std::vector<double>& lambda) {
            double l0 = 1.0;
            for (double l : lambda) l0 -= l;
            for (int i = 0; i < kdim; ++i) {
                t[i] = l0 * verts[s[0]][i];
                for (int j = 1; j <= kdim; ++j) t[i] += lambda[j - 1] * verts[s[j]][i];
            }
            double prod = 1.0;
            for (int i = 0; i < m; ++i) {
                if (alpha[i] == 1.0) continue;
                double u = u0d[i];
                for (int j = 0; j < kdim; ++j) u += Bd[i][j] * t[j];
                if (u <= 0) {
                    if (alpha[i] < 1.0) return 0.0;  // boundary singularity
                    u = 0.0;
                }
                prod *= std::pow(u, alpha[i] - 1.0);
            }
            return prod;
        };
        total += det * simplex_integral(integrand, kdim, rel_tol, cfg.max_subdiv);
    }
    return total * jac / gammas;
}

double aomoto_gelfand_phi(const RationalMatrix& L, const std::vector<double>& alpha,
                          const RationalVector& y, const special::QuadratureConfig& cfg) {
    double gammas = 1.0;
    for (double a : alpha) gammas *= special::gamma_fn(a);
    return kernel_value_numeric(L, alpha, y, cfg) * gammas;
}

ClosedFormKernel ClosedFormKernel::monomial(std::vector<Rational> alphas) {
    for (const auto& a : alphas)
        if (a <= 0) throw domain_error("monomial kernel needs every alpha > 0");
    ClosedFormKernel k;
    k.kind = Kind::monomial;
    k.alphas = std::move(alphas);
    return k;
}

ClosedFormKernel ClosedFormKernel::e23(const Rational& alpha) {
    if (!(alpha > Rational(1, 2)))
        throw domain_error("e23 kernel is valid only for alpha > 1/2");
    ClosedFormKernel k;
    k.kind = Kind::e23;
    k.alpha = alpha;
    return k;
}

ClosedFormKernel ClosedFormKernel::e24(const Rational& alpha) {
    if (!(alpha > 1)) throw domain_error("e24 kernel is valid only for alpha > 1");
    ClosedFormKernel k;
    k.kind = Kind::e24;
    k.alpha = alpha;
    return k;
}

ClosedFormKernel ClosedFormKernel::determinant(int m, const Rational& alpha) {
    if (m < 1) throw domain_error("determinant kernel needs m >= 1");
    if (!(alpha > Rational(m - 1, 2)))
        throw domain_error("determinant kernel is valid only for alpha > (m-1)/2");
    ClosedFormKernel k;
    k.kind = Kind::determinant;
    k.alpha = alpha;
    k.m = m;
    return k;
}

ClosedFormKernel ClosedFormKernel::cubic_2f1(const Rational& v, const Rational& alpha) {
    if (!(v > 0)) throw domain_error("cubic kernel needs v > 0");
    if (!(alpha > 0)) throw domain_error("cubic kernel needs alpha > 0");
    ClosedFormKernel k;
    k.kind = Kind::cubic_2f1;
    k.alpha = alpha;
    k.v = v;
    return k;
}

int closed_form_dim(const ClosedFormKernel& k) {
    switch (k.kind) {
        case ClosedFormKernel::Kind::monomial: return static_cast<int>(k.alphas.size());
        case ClosedFormKernel::Kind::e23: return 3;
        case ClosedFormKernel::Kind::e24: return 4;
        case ClosedFormKernel::Kind::determinant: return k.m * (k.m + 1) / 2;
        case ClosedFormKernel::Kind::cubic_2f1: return 2;
    }
    return 0;
}

namespace {

// principal minors of the symmetric matrix packed as upper triangle rows
template <typename Scalar, typename Mat>
Mat unpack_symmetric(const std::vector<Scalar>& y, int m) {
    Mat M(m, m);
    int idx = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
            M(i, j) = y[idx];
            M(j, i) = y[idx];
            ++idx;
        }
    return M;
}

bool psd_exact(const RationalVector& y, int m) {
    std::vector<Rational> v(y.data(), y.data() + y.size());
    RationalMatrix M = unpack_symmetric<Rational, RationalMatrix>(v, m);
    // all principal minors nonnegative
    for (int mask = 1; mask < (1 << m); ++mask) {
        std::vector<int> idx;
        for (int i = 0; i < m; ++i)
            if (mask & (1 << i)) idx.push_back(i);
        RationalMatrix sub(idx.size(), idx.size());
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) sub(a, b) = M(idx[a], idx[b]);
        if (exactalg::determinant(sub) < 0) return false;
    }
    return true;
}

double e23_base(double y1, double y2, double y3) {
    return y1 * y2 + y1 * y3 + y2 * y3 - 0.5 * (y1 * y1 + y2 * y2 + y3 * y3);
}

double e24_base(const std::vector<double>& y) {
    double e2 = 0, sq = 0;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) e2 += y[i] * y[j];
        sq += y[i] * y[i];
    }
    return e2 - sq;
}

double e23_constant(double alpha) {
    return std::pow(2.0, 1.0 - alpha) /
           (std::sqrt(2.0 * M_PI) * special::gamma_fn(alpha) * special::gamma_fn(alpha - 0.5));
}

double e24_constant(double alpha) {
    return std::pow(3.0, 1.5 - alpha) /
           (2.0 * M_PI * special::gamma_fn(alpha) * special::gamma_fn(alpha - 1.0));
}

}  // namespace

double closed_form_kernel(const ClosedFormKernel& k, const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != closed_form_dim(k))
        throw structural_error("kernel argument has wrong dimension");
    switch (k.kind) {
        case ClosedFormKernel::Kind::monomial: {
            double out = 1.0;
            for (size_t i = 0; i < y.size(); ++i) {
                if (y[i] < 0) return 0.0;
                double a = to_double(k.alphas[i]);
                out *= std::pow(y[i], a - 1.0) / special::gamma_fn(a);
            }
            return out;
        }
        case ClosedFormKernel::Kind::e23: {
            double base = e23_base(y[0], y[1], y[2]);
            if (base < 0 || y[0] + y[1] + y[2] < 0) return 0.0;
            double a = to_double(k.alpha);
            return e23_constant(a) * std::pow(base, a - 1.5);
        }
        case ClosedFormKernel::Kind::e24: {
            double base = e24_base(y);
            if (base < 0 || y[0] + y[1] + y[2] + y[3] < 0) return 0.0;
            double a = to_double(k.alpha);
            return e24_constant(a) * std::pow(base, a - 2.0);
        }
        case ClosedFormKernel::Kind::determinant: {
            Eigen::MatrixXd M = unpack_symmetric<double, Eigen::MatrixXd>(y, k.m);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
            double det = 1.0;
            for (int i = 0; i < k.m; ++i) {
                if (es.eigenvalues()[i] < 0) return 0.0;
                det *= es.eigenvalues()[i];
            }
            double a = to_double(k.alpha);
            double constant = std::pow(M_PI, k.m * (k.m - 1) / 4.0);
            for (int j = 0; j < k.m; ++j) constant *= special::gamma_fn(a - 0.5 * j);
            return std::pow(det, a - 0.5 * (k.m + 1)) / constant;
        }
        case ClosedFormKernel::Kind::cubic_2f1: {
            double v = to_double(k.v), a = to_double(k.alpha);
            double y1 = y[0], y2 = y[1];
            if (y1 < 0 || y2 < 0) return 0.0;
            if (y1 == 0 && y2 == 0) return 0.0;
            double denom = special::gamma_fn(a) * special::gamma_fn(2.0 * a);
            if (y2 == v * y1) {
                // on the wall both branch formulas degenerate; the limit of
                // the hypergeometric factor at z -> -inf gives
                if (!(a > 0.5)) return 0.0;
                return std::pow(y2 / v, 2.0 * a - 1.0) * std::pow(y2, a - 1.0) *
                       special::gamma_fn(2.0 * a - 1.0) /
                       (special::gamma_fn(a) * special::gamma_fn(a) *
                        special::gamma_fn(3.0 * a - 1.0));
            }
            if (y2 < v * y1) {
                double base = v * y1 - y2;
                double z = y2 / (y2 - v * y1);
                double f = special::gauss_2f1(1.0 - a, a, 2.0 * a, z);
                return std::pow(y2 / v, 2.0 * a - 1.0) * std::pow(base, a - 1.0) * f / denom;
            }
            double base = y2 - v * y1;
            double z = -v * y1 / base;
            double f = special::gauss_2f1(1.0 - a, a, 2.0 * a, z);
            return std::pow(y1, 2.0 * a - 1.0) * std::pow(base, a - 1.0) * f / denom;
        }
    }
    return 0.0;
}

bool closed_form_support(const ClosedFormKernel& k, const RationalVector& y) {
    if (y.size() != closed_form_dim(k)) throw structural_error("support point has wrong dimension");
    switch (k.kind) {
        case ClosedFormKernel::Kind::monomial: {
            for (Eigen::Index i = 0; i < y.size(); ++i)
                if (y[i] < 0) return false;
            return true;
        }
        case ClosedFormKernel::Kind::e23: {
            Rational base = y[0] * y[1] + y[0] * y[2] + y[1] * y[2] -
                            Rational(1, 2) * (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
            return base >= 0 && y[0] + y[1] + y[2] >= 0;
        }
        case ClosedFormKernel::Kind::e24: {
            Rational e2(0), sq(0), tr(0);
            for (int i = 0; i < 4; ++i) {
                for (int j = i + 1; j < 4; ++j) e2 += y[i] * y[j];
                sq += y[i] * y[i];
                tr += y[i];
            }
            return e2 - sq >= 0 && tr >= 0;
        }
        case ClosedFormKernel::Kind::determinant:
            return psd_exact(y, k.m);
        case ClosedFormKernel::Kind::cubic_2f1:
            return y[0] >= 0 && y[1] >= 0;
    }
    return false;
}

double kernel_e35_stage(double alpha, const std::vector<double>& y,
                        const special::QuadratureConfig& cfg) {
    if (!(alpha > 1)) throw domain_error("stage kernel needs alpha > 1");
    if (y.size() != 5) throw structural_error("stage kernel takes a 5-vector");
    for (double v : y)
        if (v < 0) return 0.0;

    // support in s: two downward parabolas must both be nonnegative
    // base1(s) = -s^2 + E1(y1..y3) s + (E2(y1..y3) - sum y_i^2)
    // base2(s) = -s^2/2 + (y4+y5) s + (y4 y5 - (y4^2+y5^2)/2)
    double e1 = y[0] + y[1] + y[2];
    double e2 = y[0] * y[1] + y[0] * y[2] + y[1] * y[2];
    double sq3 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    double c1 = e2 - sq3;
    double disc1 = e1 * e1 + 4.0 * c1;
    if (disc1 <= 0) return 0.0;
    double lo1 = 0.5 * (e1 - std::sqrt(disc1)), hi1 = 0.5 * (e1 + std::sqrt(disc1));

    double s45 = y[3] + y[4];
    double c2 = y[3] * y[4] - 0.5 * (y[3] * y[3] + y[4] * y[4]);
    double disc2 = s45 * s45 + 2.0 * c2;
    if (disc2 <= 0) return 0.0;
    double lo2 = s45 - std::sqrt(disc2), hi2 = s45 + std::sqrt(disc2);

    double lo = std::max({lo1, lo2, 0.0});
    double hi = std::min(hi1, hi2);
    if (!(hi > lo)) return 0.0;

    const double ca1 = e24_constant(alpha);
    const double ca2 = e23_constant(alpha);
    auto integrand = [&](double s) {
        double b1 = -s * s + e1 * s + c1;
        double b2 = -0.5 * s * s + s45 * s + c2;
        if (b1 <= 0 || b2 <= 0 || s <= 0) return 0.0;
        double q1 = ca1 * std::pow(b1, alpha - 2.0);
        double q2 = ca2 * std::pow(b2, alpha - 1.5);
        return std::pow(s, 1.0 - alpha) * q1 * q2;
    };
    try {
        auto r = special::integrate_adaptive_regularized(integrand, lo, hi,
                                                         std::max(cfg.rel_tol, 1e-9),
                                                         cfg.max_subdiv);
        return special::gamma_fn(alpha) * r.value;
    } catch (const special::convergence_error& e) {
        throw special::convergence_error(std::string(e.what()) + " on the support interval [" +
                                         std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
}

}  // namespace rieszlab::kernels
