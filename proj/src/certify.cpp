#include "rieszlab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rieszlab/convalg.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab::certify {

DerivativeState initial_state(SparsePoly p, const Rational& s) {
    DerivativeState st;
    st.numerator = SparsePoly::constant(p.vars(), Rational(1));
    st.base = std::move(p);
    st.s = s;
    st.order = 0;
    return st;
}

DerivativeState derivative_step(const DerivativeState& st, int var) {
    DerivativeState out;
    out.base = st.base;
    out.s = st.s;
    out.order = st.order + 1;
    Rational factor = st.s - st.order;
    out.numerator = st.numerator.partial_derivative(var) * st.base +
                    factor * (st.numerator * st.base.partial_derivative(var));
    return out;
}

DerivativeState signed_derivative(const SparsePoly& p, const Rational& s,
                                  const std::vector<int>& multiindex) {
    if (static_cast<int>(multiindex.size()) != p.nvars())
        throw structural_error("multi-index length mismatch");
    DerivativeState st = initial_state(p, s);
    for (int var = 0; var < p.nvars(); ++var)
        for (int k = 0; k < multiindex[var]; ++k) st = derivative_step(st, var);
    return st;
}

double ExactPowerValue::as_double() const {
    return to_double(coeff) * std::pow(to_double(base), to_double(exponent));
}

ExactPowerValue evaluate_state(const DerivativeState& st, const RationalVector& x0) {
    Rational pval = st.base.evaluate(x0);
    if (pval <= 0) throw domain_error("derivative evaluation needs p(x0) > 0");
    Rational expo = st.s - st.order;
    Integer whole = floor_rational(expo);
    ExactPowerValue v;
    v.base = pval;
    v.exponent = expo - Rational(whole);
    long w = whole.convert_to<long>();
    v.coeff = st.numerator.evaluate(x0) * pow_rational(pval, w);
    return v;
}

int signed_sign(const DerivativeState& st, const RationalVector& x0) {
    Rational pval = st.base.evaluate(x0);
    if (pval <= 0) throw domain_error("sign evaluation needs p(x0) > 0");
    int sgn = sign(st.numerator.evaluate(x0));
    return st.order % 2 == 0 ? sgn : -sgn;
}

std::vector<RationalVector> default_refuter_points(int nvars, uint64_t seed, int extra) {
    std::vector<RationalVector> pts;
    RationalVector ones(nvars);
    for (int i = 0; i < nvars; ++i) ones[i] = 1;
    pts.push_back(ones);
    Rng rng(seed, 0x9f);
    for (int k = 0; k < extra; ++k) {
        RationalVector x(nvars);
        for (int i = 0; i < nvars; ++i) x[i] = Rational(rng.int_in(1, 40), rng.int_in(1, 8));
        pts.push_back(x);
    }
    return pts;
}

namespace {

// multi-indices of total order k in ascending lexicographic order
void enumerate_order(int nvars, int k, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(nvars, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == nvars - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[pos] = v;
            self(self, pos + 1, rem - v);
        }
    };
    if (nvars == 1) {
        cur[0] = k;
        out.push_back(cur);
        return;
    }
    rec(rec, 0, k);
}

bool is_sorted_descending(const std::vector<int>& v) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (v[i] < v[i + 1]) return false;
    return true;
}

bool is_constant_point(const RationalVector& x) {
    for (Eigen::Index i = 1; i < x.size(); ++i)
        if (x[i] != x[0]) return false;
    return true;
}

}  // namespace

Certificate refute_cm(const SparsePoly& p, const Rational& s, int max_order,
                      const std::vector<RationalVector>& points,
                      const std::optional<hyperbolicity::HyperbolicInstance>& cone_check,
                      bool keep_numerator, uint64_t seed) {
    Certificate cert;
    cert.problem = "p^s with s = " + to_string(s);
    for (const auto& x : points) {
        if (p.evaluate(x) <= 0)
            throw domain_error("refuter precondition: p must be positive at every test point");
    }
    if (cone_check) {
        cert.hyperbolicity_report =
            hyperbolicity::hyperbolicity_check(*cone_check, 200, seed);
    }

    const int nvars = p.nvars();
    const bool symmetric = exactalg::is_symmetric(p);

    // states cached per multi-index; parents expanded breadth-first
    std::map<std::vector<int>, DerivativeState> cache;
    std::vector<int> zero(nvars, 0);
    cache.emplace(zero, initial_state(p, s));

    auto state_for = [&](const std::vector<int>& beta) -> const DerivativeState& {
        auto it = cache.find(beta);
        if (it != cache.end()) return it->second;
        std::vector<int> parent = beta;
        int var = -1;
        for (int i = nvars - 1; i >= 0; --i)
            if (parent[i] > 0) { var = i; break; }
        parent[var] -= 1;
        auto self = [&](const std::vector<int>& b) -> const DerivativeState& {
            auto jt = cache.find(b);
            if (jt != cache.end()) return jt->second;
            throw structural_error("derivative cache miss");
        };
        const DerivativeState& par = self(parent);
        auto [jt, ok] = cache.emplace(beta, derivative_step(par, var));
        return jt->second;
    };

    for (int order = 1; order <= max_order; ++order) {
        std::vector<std::vector<int>> indices;
        enumerate_order(nvars, order, indices);
        for (const auto& beta : indices) {
            const DerivativeState& st = state_for(beta);
            bool canonical = !symmetric || is_sorted_descending(beta);
            for (const auto& x : points) {
                // at a symmetric point of a symmetric polynomial the sign only
                // depends on the sorted multi-index
                if (!canonical && is_constant_point(x)) continue;
                if (signed_sign(st, x) < 0) {
                    cert.status = Certificate::Status::CM_REFUTED;
                    RefutationWitness w;
                    w.multiindex = beta;
                    w.point = to_std(x);
                    w.value = evaluate_state(st, x);
                    w.numerator_terms = static_cast<int>(st.numerator.term_count());
                    w.numerator_degree = st.numerator.total_degree();
                    if (keep_numerator) w.numerator = st.numerator;
                    cert.witness = std::move(w);
                    cert.reason = "exact negative signed derivative found";
                    return cert;
                }
            }
        }
    }
    cert.status = Certificate::Status::UNKNOWN;
    cert.reason = "no negative signed derivative up to order " + std::to_string(max_order);
    return cert;
}

LaplaceCheck laplace_residual(const std::function<double(const std::vector<double>&)>& q,
                              const std::vector<Rational>& x, double target,
                              const special::QuadratureConfig& cfg) {
    std::vector<double> rates(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0) throw domain_error("Laplace check point must be strictly positive");
        rates[i] = to_double(x[i]);
    }
    auto h = [&](const std::vector<double>& y) {
        double dot = 0;
        for (size_t i = 0; i < y.size(); ++i) dot += rates[i] * y[i];
        double qv = q(y);
        if (!std::isfinite(qv)) {
            std::string msg = "non-finite kernel sample at y = (";
            for (size_t i = 0; i < y.size(); ++i)
                msg += (i ? "," : "") + std::to_string(y[i]);
            throw special::convergence_error(msg + ")");
        }
        return qv * std::exp(-dot);
    };
    special::IntegralResult r = special::mc_integrate_orthant(h, rates, cfg);
    LaplaceCheck check;
    check.x = x;
    check.target = target;
    check.estimate = r.value;
    check.relative_error = std::abs(r.value - target) / target;
    check.mc_stderr = r.error;
    check.samples = cfg.samples;
    check.seed = cfg.seed;
    return check;
}

LaplaceCheck laplace_residual_psd2(const std::function<double(const std::vector<double>&)>& q,
                                   const std::vector<Rational>& x, double target,
                                   const special::QuadratureConfig& cfg) {
    if (x.size() != 3) throw structural_error("psd2 check takes (a11, a12, a22)");
    double x11 = to_double(x[0]), x12 = to_double(x[1]), x22 = to_double(x[2]);
    if (!(x11 > 0) || !(x11 * x22 - x12 * x12 > 0))
        throw domain_error("Laplace check point must be positive definite");
    auto draw = [&](Rng& rng) {
        thread_local std::vector<double> y(3);
        double y11 = rng.exponential(x11);
        double y22 = rng.exponential(x22);
        double r = std::sqrt(y11 * y22);
        double y12 = (2.0 * rng.next_double() - 1.0) * r;
        y[0] = y11;
        y[1] = y12;
        y[2] = y22;
        double qv = q(y);
        if (!std::isfinite(qv))
            throw special::convergence_error("non-finite kernel sample in psd2 check");
        // density: x11 e^{-x11 y11} x22 e^{-x22 y22} / (2 r); pairing adds
        // the off-diagonal factor e^{-2 x12 y12}
        return qv * std::exp(-2.0 * x12 * y12) * 2.0 * r / (x11 * x22);
    };
    special::IntegralResult r = special::mc_integrate(draw, cfg);
    LaplaceCheck check;
    check.x = x;
    check.target = target;
    check.estimate = r.value;
    check.relative_error = std::abs(r.value - target) / target;
    check.mc_stderr = r.error;
    check.samples = cfg.samples;
    check.seed = cfg.seed;
    return check;
}

namespace {

SparsePoly product_of_forms(const RationalMatrix& L, const std::vector<long>& alpha) {
    auto vars = exactalg::default_vars(static_cast<int>(L.rows()));
    SparsePoly p = SparsePoly::constant(vars, Rational(1));
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
        SparsePoly form = SparsePoly::linear_form(vars, L.col(j), Rational(0));
        p = p * form.pow(static_cast<unsigned>(alpha[j]));
    }
    return p;
}

RationalVector interior_direction(const RationalMatrix& L) {
    std::vector<RationalVector> ineqs;
    for (Eigen::Index j = 0; j < L.cols(); ++j) ineqs.push_back(L.col(j));
    auto rays = polyhedra::cone_extreme_rays(ineqs, static_cast<int>(L.rows()));
    RationalVector e = RationalVector::Zero(L.rows());
    for (const auto& r : rays) e += r;
    return e;
}

// Q4 + x5 E_{2,4} in five variables
SparsePoly stage_polynomial() {
    auto vars = exactalg::default_vars(5);
    SparsePoly p(vars);
    // x1 x2 x4 + x1 x3 x4 + x2 x3 x4
    p.add_term({1, 1, 0, 1, 0}, Rational(1));
    p.add_term({1, 0, 1, 1, 0}, Rational(1));
    p.add_term({0, 1, 1, 1, 0}, Rational(1));
    // x5 * E_{2,4}(x1..x4)
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            std::vector<int> e(5, 0);
            e[i] = 1;
            e[j] = 1;
            e[4] = 1;
            p.add_term(e, Rational(1));
        }
    return p;
}

RationalVector ones_direction(int n) {
    RationalVector e(n);
    for (int i = 0; i < n; ++i) e[i] = 1;
    return e;
}

}  // namespace

std::optional<KernelPlan> make_kernel_plan(const CertifyProblem& problem,
                                           const special::QuadratureConfig& quad,
                                           std::optional<kernels::PiecewiseKernel>& piecewise,
                                           std::string* unsupported_reason) {
    using Kind = CertifyProblem::Kind;
    const double alpha_d = to_double(problem.alpha);
    std::optional<KernelPlan> plan;
    auto unsupported = [&](const std::string& why) {
        if (unsupported_reason) *unsupported_reason = why;
    };
    auto config = CertifyConfig{};
    config.quad = quad;

    switch (problem.kind) {
        case Kind::linear_forms: {
            if (!problem.L) throw structural_error("linear_forms problem needs a matrix");
            const RationalMatrix& L = *problem.L;
            bool nonneg = true;
            for (Eigen::Index i = 0; i < L.size(); ++i)
                if (*(L.data() + i) < 0) nonneg = false;
            if (!nonneg) {
                unsupported(
                    "Laplace validation is implemented for cones inside the positive orthant");
                break;
            }
            piecewise = kernels::kernel_linear_forms(L, problem.alpha_int);
            auto eval = std::make_shared<kernels::PiecewiseKernelEvaluator>(*piecewise);
            KernelPlan kp;
            kp.q = [eval](const std::vector<double>& y) { return (*eval)(y); };
            kp.dim = static_cast<int>(L.rows());
            kp.description = "piecewise polynomial kernel on the chamber complex";
            kp.p = product_of_forms(L, problem.alpha_int);
            kp.e = interior_direction(L);
            kp.target = [L, alpha = problem.alpha_int](const RationalVector& x) {
                Rational f(1);
                for (Eigen::Index j = 0; j < L.cols(); ++j)
                    f *= pow_rational(L.col(j).dot(x), alpha[j]);
                return 1.0 / to_double(f);
            };
            kp.support = [cc = &piecewise->complex](const RationalVector& y) {
                return polyhedra::locate_cell(*cc, y) >= 0;
            };
            plan = std::move(kp);
            break;
        }
        case Kind::e23: {
            if (problem.alpha > Rational(1, 2)) {
                auto k = kernels::ClosedFormKernel::e23(problem.alpha);
                KernelPlan kp;
                kp.q = [k](const std::vector<double>& y) {
                    return kernels::closed_form_kernel(k, y);
                };
                kp.support = [k](const RationalVector& y) {
                    return kernels::closed_form_support(k, y);
                };
                kp.dim = 3;
                kp.description = "closed-form kernel for E_{2,3}^{-alpha}";
                kp.p = hyperbolicity::elementary_symmetric(2, 3);
                kp.e = ones_direction(3);
                kp.target = [alpha_d, p = kp.p](const RationalVector& x) {
                    return std::pow(to_double(p.evaluate(x)), -alpha_d);
                };
                plan = std::move(kp);
            }
            break;
        }
        case Kind::e24: {
            if (problem.alpha > 1) {
                auto k = kernels::ClosedFormKernel::e24(problem.alpha);
                KernelPlan kp;
                kp.q = [k](const std::vector<double>& y) {
                    return kernels::closed_form_kernel(k, y);
                };
                kp.support = [k](const RationalVector& y) {
                    return kernels::closed_form_support(k, y);
                };
                kp.dim = 4;
                kp.description = "closed-form kernel for E_{2,4}^{-alpha}";
                kp.p = hyperbolicity::elementary_symmetric(2, 4);
                kp.e = ones_direction(4);
                kp.target = [alpha_d, p = kp.p](const RationalVector& x) {
                    return std::pow(to_double(p.evaluate(x)), -alpha_d);
                };
                plan = std::move(kp);
            }
            break;
        }
        case Kind::determinant: {
            if (problem.m != 2) {
                unsupported("determinant Laplace validation is implemented for m = 2");
                break;
            }
            if (problem.alpha > Rational(problem.m - 1, 2)) {
                auto k = kernels::ClosedFormKernel::determinant(2, problem.alpha);
                KernelPlan kp;
                kp.q = [k](const std::vector<double>& y) {
                    return kernels::closed_form_kernel(k, y);
                };
                kp.support = [k](const RationalVector& y) {
                    return kernels::closed_form_support(k, y);
                };
                kp.dim = 3;
                kp.description = "Wishart-normalization kernel for det^{-alpha}, m = 2";
                auto inst = hyperbolicity::symmetric_determinant_2x2();
                kp.p = inst.p;
                kp.e = inst.e;
                kp.psd_frame = true;
                kp.target = [alpha_d, p = kp.p](const RationalVector& x) {
                    return std::pow(to_double(p.evaluate(x)), -alpha_d);
                };
                plan = std::move(kp);
            }
            break;
        }
        case Kind::cubic: {
            auto k = kernels::ClosedFormKernel::cubic_2f1(problem.v, problem.alpha);
            KernelPlan kp;
            kp.q = [k](const std::vector<double>& y) {
                return kernels::closed_form_kernel(k, y);
            };
            kp.support = [k](const RationalVector& y) {
                return kernels::closed_form_support(k, y);
            };
            kp.dim = 2;
            kp.description = "Gauss-2F1 kernel for x1 x2 (x1 + v x2)";
            auto vars = exactalg::default_vars(2);
            SparsePoly x1 = SparsePoly::variable(vars, 0), x2 = SparsePoly::variable(vars, 1);
            kp.p = x1 * x2 * (x1 + problem.v * x2);
            kp.e = ones_direction(2);
            kp.target = [alpha_d, p = kp.p](const RationalVector& x) {
                return std::pow(to_double(p.evaluate(x)), -alpha_d);
            };
            plan = std::move(kp);
            break;
        }
        case Kind::e35_stage: {
            if (problem.alpha > 1) {
                double a = alpha_d;
                auto cfg = config.quad;
                // per-sample inner quadrature: Monte Carlo noise dominates
                cfg.rel_tol = std::max(cfg.rel_tol, 1e-5);
                KernelPlan kp;
                kp.q = [a, cfg](const std::vector<double>& y) {
                    return kernels::kernel_e35_stage(a, y, cfg);
                };
                kp.support = [](const RationalVector& y) {
                    for (Eigen::Index i = 0; i < y.size(); ++i)
                        if (y[i] < 0) return false;
                    return true;
                };
                kp.dim = 5;
                kp.description = "stage kernel for (Q4 + x5 E_{2,4})^{-alpha}";
                kp.p = stage_polynomial();
                kp.e = ones_direction(5);
                kp.target = [alpha_d, p = kp.p](const RationalVector& x) {
                    return std::pow(to_double(p.evaluate(x)), -alpha_d);
                };
                plan = std::move(kp);
            }
            break;
        }
        case Kind::elementary:
        case Kind::raw:
            break;
    }
    return plan;
}

LaplaceCheck laplace_check_for(const CertifyProblem& problem, const RationalVector& x,
                               const special::QuadratureConfig& cfg) {
    std::optional<kernels::PiecewiseKernel> piecewise;
    std::string reason;
    auto plan = make_kernel_plan(problem, cfg, piecewise, &reason);
    if (!plan)
        throw domain_error(reason.empty() ? "no kernel construction applies to this problem"
                                          : reason);
    double target = plan->target(x);
    return plan->psd_frame ? laplace_residual_psd2(plan->q, to_std(x), target, cfg)
                           : laplace_residual(plan->q, to_std(x), target, cfg);
}

Certificate certify(const CertifyProblem& problem, const CertifyConfig& config) {
    Certificate cert;
    using Kind = CertifyProblem::Kind;
    std::optional<kernels::PiecewiseKernel> piecewise;
    std::string unsupported_reason;
    std::optional<KernelPlan> plan =
        make_kernel_plan(problem, config.quad, piecewise, &unsupported_reason);
    if (!plan && !unsupported_reason.empty()) {
        cert.status = Certificate::Status::UNKNOWN;
        cert.reason = unsupported_reason;
        return cert;
    }

    if (!plan) {
        // no supported construction: try to refute, otherwise UNKNOWN
        SparsePoly p;
        RationalVector e;
        if (problem.kind == Kind::elementary) {
            p = hyperbolicity::elementary_symmetric(problem.m, problem.n);
            e = ones_direction(problem.n);
        } else if (problem.kind == Kind::e23) {
            p = hyperbolicity::elementary_symmetric(2, 3);
            e = ones_direction(3);
        } else if (problem.kind == Kind::e24) {
            p = hyperbolicity::elementary_symmetric(2, 4);
            e = ones_direction(4);
        } else if (problem.poly) {
            p = *problem.poly;
            e = problem.e ? *problem.e : ones_direction(problem.poly->nvars());
        } else {
            cert.status = Certificate::Status::UNKNOWN;
            cert.reason = "unsupported problem class: no kernel construction applies";
            return cert;
        }
        std::optional<hyperbolicity::HyperbolicInstance> inst;
        if (p.evaluate(e) > 0)
            inst = hyperbolicity::HyperbolicInstance::make(p, e);
        auto points = default_refuter_points(p.nvars(), config.quad.seed);
        Certificate r = refute_cm(p, -problem.alpha, config.max_order, points, inst,
                                  config.keep_numerator, config.quad.seed);
        if (r.status == Certificate::Status::UNKNOWN && problem.kind != Kind::raw &&
            problem.kind != Kind::elementary) {
            r.reason += "; exponent below the kernel validity threshold, no certificate";
        }
        return r;
    }

    // hyperbolicity gate
    auto inst = hyperbolicity::HyperbolicInstance::make(plan->p, plan->e);
    cert.hyperbolicity_report =
        hyperbolicity::hyperbolicity_check(inst, config.hyperbolicity_trials, config.quad.seed);
    cert.kernel_description = plan->description;

    // nonnegativity sampling over the support
    Rng rng(config.quad.seed, 0x2024);
    long checked = 0;
    bool nonneg = true;
    if (piecewise) {
        for (size_t c = 0; c < piecewise->pieces.size(); ++c) {
            auto pts = polyhedra::cell_interior_points(piecewise->complex, static_cast<int>(c),
                                                       static_cast<int>(config.nonneg_samples),
                                                       config.quad.seed);
            for (const auto& y : pts) {
                ++checked;
                if (piecewise->pieces[c].evaluate(y) < 0) nonneg = false;
            }
        }
    } else {
        long attempts = 0;
        while (checked < config.nonneg_samples && attempts < 200 * config.nonneg_samples) {
            ++attempts;
            RationalVector y(plan->dim);
            for (int i = 0; i < plan->dim; ++i)
                y[i] = Rational(rng.int_in(0, 64), rng.int_in(1, 8));
            if (!plan->support(y)) continue;
            std::vector<double> yd(plan->dim);
            for (int i = 0; i < plan->dim; ++i) yd[i] = to_double(y[i]);
            if (plan->q(yd) < 0) nonneg = false;
            ++checked;
        }
    }
    cert.nonnegativity_samples = checked;
    cert.nonnegativity_passed = nonneg;

    // Laplace checks at three deterministic interior points
    std::vector<RationalVector> xs;
    if (plan->psd_frame) {
        RationalVector a(3), b(3), c(3);
        a << 1, 0, 1;
        b << 2, Rational(1, 2), 1;
        c << 1, Rational(-1, 4), 2;
        xs = {a, b, c};
    } else {
        // cone(L) sits inside the orthant here, so the dual cone contains
        // the open orthant: strictly positive x points are interior
        RationalVector base = ones_direction(plan->dim);
        xs.push_back(base);
        xs.push_back(RationalVector(Rational(3, 2) * base));
        RationalVector tweaked = base;
        tweaked[0] += Rational(1, 2);
        xs.push_back(tweaked);
    }
    bool laplace_ok = true;
    for (const auto& x : xs) {
        double target = plan->target(x);
        LaplaceCheck check =
            plan->psd_frame
                ? laplace_residual_psd2(plan->q, to_std(x), target, config.quad)
                : laplace_residual(plan->q, to_std(x), target, config.quad);
        if (!(check.relative_error <= config.laplace_tolerance)) laplace_ok = false;
        cert.laplace_checks.push_back(std::move(check));
    }

    if (nonneg && laplace_ok) {
        if (!cert.hyperbolicity_report->passed)
            throw structural_error(
                "internal inconsistency: kernel validates but the hyperbolicity sampling "
                "failed; a completely monotone power requires hyperbolicity");
        cert.status = Certificate::Status::CM_CERTIFIED;
        cert.reason = "kernel nonnegative on samples and Laplace checks passed";
    } else {
        cert.status = Certificate::Status::UNKNOWN;
        cert.reason = nonneg ? "Laplace residual above tolerance" : "negative kernel sample";
    }
    return cert;
}

}  // namespace rieszlab::certify
