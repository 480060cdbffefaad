#include "rieszlab/special_fns.hpp"

#include <Eigen/Eigenvalues>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "rieszlab/rng.hpp"

namespace rieszlab::special {

double GammaExact::as_double() const {
    double v = to_double(coeff);
    return sqrt_pi ? v * std::sqrt(M_PI) : v;
}

bool is_half_integer(const Rational& a) {
    return denominator(a) == 1 || denominator(a) == 2;
}

GammaExact gamma_exact(const Rational& a) {
    if (a <= 0) throw domain_error("gamma requires a positive argument");
    if (denominator(a) == 1) {
        Rational f(1);
        for (Integer k = 2; k < numerator(a); ++k) f *= Rational(k);
        return {f, false};
    }
    if (denominator(a) == 2) {
        // walk down to Gamma(1/2) = sqrt(pi)
        Rational c(1);
        Rational t = a;
        while (t > Rational(1, 2)) {
            t -= 1;
            c *= t;
        }
        return {c, true};
    }
    throw domain_error("exact gamma needs an integer or half-integer argument");
}

namespace {

// Lanczos approximation; valid away from the poles, negatives by reflection.
double gamma_real(double a) {
    static const double g = 7;
    static const double c[9] = {0.99999999999980993,  676.5203681218851,
                                -1259.1392167224028,  771.32342877765313,
                                -176.61502916214059,  12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6,
                                1.5056327351493116e-7};
    if (a < 0.5) return M_PI / (std::sin(M_PI * a) * gamma_real(1.0 - a));
    double z = a - 1.0;
    double x = c[0];
    for (int i = 1; i < 9; ++i) x += c[i] / (z + i);
    double t = z + g + 0.5;
    return std::sqrt(2.0 * M_PI) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

}  // namespace

double gamma_fn(double a) {
    if (!(a > 0)) throw domain_error("gamma requires a positive argument");
    return gamma_real(a);
}

namespace {

bool is_nonpositive_integer(double v) {
    return v <= 0 && std::abs(v - std::round(v)) < 1e-12;
}

double gauss_2f1_series(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 10000; ++k) {
        term *= (a + k) * (b + k) / ((c + k) * (1.0 + k)) * z;
        sum += term;
        if (std::abs(term) <= 1e-16 * std::abs(sum)) return sum;
        if (term == 0.0) return sum;  // terminating (polynomial) case
    }
    throw convergence_error("2F1 series did not converge");
}

}  // namespace

double gauss_2f1(double a, double b, double c, double z) {
    if (is_nonpositive_integer(c)) throw domain_error("2F1 pole: c is a nonpositive integer");
    if (z >= 1.0) throw domain_error("2F1 requires z < 1");
    if (z == 0.0 || a == 0.0 || b == 0.0) return 1.0;
    if (std::abs(z) <= 0.7) return gauss_2f1_series(a, b, c, z);
    if (z < 0.0) {
        if (z < -9.0 && c > b && b > 0) {
            // far into the left half line the transformed series converge
            // slowly; the Euler integral is smooth and cheap there
            auto f = [&](double x) {
                return std::pow(x, b - 1.0) * std::pow(1.0 - x, c - b - 1.0) *
                       std::pow(1.0 - z * x, -a);
            };
            IntegralResult r = integrate_adaptive_regularized(f, 0.0, 1.0, 1e-12, 4000);
            return gamma_real(c) / (gamma_real(b) * gamma_real(c - b)) * r.value;
        }
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) with 0 < w < 1
        double w = z / (z - 1.0);
        return std::pow(1.0 - z, -a) * gauss_2f1_series(a, c - b, c, w);
    }
    // 0.7 < z < 1: connection at 1-z when c-a-b is not an integer; the
    // logarithmic case falls back to the direct series, which still
    // converges geometrically with ratio z
    double s = c - a - b;
    if (std::abs(s - std::round(s)) >= 1e-9) {
        double g1 = gamma_real(c) * gamma_real(s) / (gamma_real(c - a) * gamma_real(c - b));
        double g2 = gamma_real(c) * gamma_real(-s) / (gamma_real(a) * gamma_real(b));
        double w = 1.0 - z;
        return g1 * gauss_2f1_series(a, b, 1.0 - s, w) +
               g2 * std::pow(w, s) * gauss_2f1_series(c - a, c - b, 1.0 + s, w);
    }
    if (z > 0.99)
        throw domain_error("2F1 with integer c-a-b too close to z=1");
    return gauss_2f1_series(a, b, c, z);
}

namespace {

// 7-15 Gauss-Kronrod pair on [-1, 1]
const double kronrod_nodes[8] = {0.0,
                                 0.2077849550078985,
                                 0.4058451513773972,
                                 0.5860872354676911,
                                 0.7415311855993945,
                                 0.8648644233597691,
                                 0.9491079123427585,
                                 0.9914553711208126};
const double kronrod_weights[8] = {0.2094821410847278, 0.2044329400752989,
                                   0.1903505780647854, 0.1690047266392679,
                                   0.1406532597155259, 0.1047900103222502,
                                   0.0630920926299786, 0.0229353220105292};
const double gauss_weights[4] = {0.4179591836734694, 0.3818300505051189,
                                 0.2797053914892767, 0.1294849661688697};

struct PanelResult {
    double kronrod, gauss;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    double h = 0.5 * (b - a), m = 0.5 * (a + b);
    double fk = 0, fg = 0;
    double f0 = f(m);
    fk += kronrod_weights[0] * f0;
    fg += gauss_weights[0] * f0;
    for (int i = 1; i < 8; ++i) {
        double x = h * kronrod_nodes[i];
        double fv = f(m - x) + f(m + x);
        fk += kronrod_weights[i] * fv;
        if (i % 2 == 0) fg += gauss_weights[i / 2] * fv;
    }
    return {fk * h, fg * h};
}

}  // namespace

IntegralResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, int max_subdiv) {
    struct Panel {
        double a, b, value, err;
    };
    std::vector<Panel> panels;
    auto eval = [&](double x, double y) {
        PanelResult r = gk15(f, x, y);
        return Panel{x, y, r.kronrod, std::abs(r.kronrod - r.gauss)};
    };
    panels.push_back(eval(a, b));
    for (int iter = 0; iter < max_subdiv; ++iter) {
        double total = 0, err = 0;
        size_t worst = 0;
        for (size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].err;
            if (panels[i].err > panels[worst].err) worst = i;
        }
        double scale = std::max(std::abs(total), 1e-300);
        if (err <= rel_tol * scale || panels[worst].err == 0) return {total, err};
        Panel w = panels[worst];
        double m = 0.5 * (w.a + w.b);
        panels[worst] = eval(w.a, m);
        panels.push_back(eval(m, w.b));
    }
    double total = 0, err = 0;
    for (const auto& p : panels) {
        total += p.value;
        err += p.err;
    }
    if (err <= 10 * rel_tol * std::max(std::abs(total), 1e-300)) return {total, err};
    throw convergence_error("adaptive quadrature did not reach the tolerance in budget");
}

IntegralResult integrate_adaptive_regularized(const std::function<double(double)>& f, double a,
                                              double b, double rel_tol, int max_subdiv, int K) {
    if (!(b > a)) return {0.0, 0.0};
    double h = 0.5 * (b - a);
    auto left = [&](double s) {
        double sk = std::pow(s, K - 1);
        return f(a + h * sk * s) * h * K * sk;
    };
    auto right = [&](double s) {
        double sk = std::pow(s, K - 1);
        return f(b - h * sk * s) * h * K * sk;
    };
    IntegralResult l = integrate_adaptive(left, 0.0, 1.0, rel_tol, max_subdiv / 2);
    IntegralResult r = integrate_adaptive(right, 0.0, 1.0, rel_tol, max_subdiv / 2);
    return {l.value + r.value, l.error + r.error};
}

IntegralResult mc_integrate(const std::function<double(Rng&)>& draw_weight,
                            const QuadratureConfig& cfg) {
    const long chunk_size = 65536;
    const long nchunks = (cfg.samples + chunk_size - 1) / chunk_size;
    std::vector<double> sums(nchunks, 0.0), sq(nchunks, 0.0);
    std::atomic<long> counter{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (;;) {
                long c = counter.fetch_add(1);
                if (c >= nchunks) return;
                Rng rng(cfg.seed, static_cast<uint64_t>(c) + 1);
                long lo = c * chunk_size;
                long hi = std::min(cfg.samples, lo + chunk_size);
                double s = 0, s2 = 0;
                for (long i = lo; i < hi; ++i) {
                    double w = draw_weight(rng);
                    s += w;
                    s2 += w * w;
                }
                sums[c] = s;
                sq[c] = s2;
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            counter.store(nchunks);
        }
    };
    int nthreads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    double total = 0, total2 = 0;
    for (long c = 0; c < nchunks; ++c) {
        total += sums[c];
        total2 += sq[c];
    }
    double n = static_cast<double>(cfg.samples);
    double mean = total / n;
    double var = std::max(0.0, total2 / n - mean * mean);
    return {mean, std::sqrt(var / n)};
}

IntegralResult mc_integrate_orthant(const std::function<double(const std::vector<double>&)>& h,
                                    const std::vector<double>& rates,
                                    const QuadratureConfig& cfg) {
    const int dim = static_cast<int>(rates.size());
    double inv_density_base = 1.0;
    for (double r : rates) inv_density_base /= r;
    auto draw = [&](Rng& rng) {
        thread_local std::vector<double> y;
        y.resize(dim);
        double extra = 0;
        for (int d = 0; d < dim; ++d) {
            y[d] = rng.exponential(rates[d]);
            extra += rates[d] * y[d];
        }
        return h(y) * inv_density_base * std::exp(extra);
    };
    return mc_integrate(draw, cfg);
}

std::vector<double> real_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    const int d = static_cast<int>(c.size()) - 1;
    if (d == 1) return {-c[0] / c[1]};
    if (d == 2) {
        double A = c[2], B = c[1], C = c[0];
        double disc = B * B - 4 * A * C;
        if (disc < 0) return {};
        double sq = std::sqrt(disc);
        double q = -0.5 * (B + (B >= 0 ? sq : -sq));
        std::vector<double> out{q / A};
        if (q != 0) out.push_back(C / q);
        else out.push_back(0.0);
        return out;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[i] / c[d];
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    std::vector<double> out;
    for (int i = 0; i < d; ++i) {
        auto ev = es.eigenvalues()[i];
        if (std::abs(ev.imag()) < 1e-9 * (1.0 + std::abs(ev.real())))
            out.push_back(ev.real());
    }
    return out;
}

IntegralResult garding_numeric(const exactalg::SparsePoly& p, const RationalVector& e,
                               double alpha, const std::vector<double>& y,
                               const QuadratureConfig& cfg) {
    const int n = p.nvars();
    if (n > 2) throw domain_error("complex-integral kernel evaluation supports n <= 2");
    if (!(alpha > n)) throw domain_error("complex-integral kernel needs alpha > n");
    auto degopt = p.homogeneous_degree();
    if (!degopt) throw domain_error("polynomial must be homogeneous");
    const int d = *degopt;
    Rational pe_exact = p.evaluate(e);
    if (pe_exact <= 0) throw domain_error("direction must satisfy p(e) > 0");
    const double pe = to_double(pe_exact);

    // coefficient polynomials of t -> p(t e + x): g_k = D_e^k p / k!
    std::vector<exactalg::SparsePoly> gk;
    gk.push_back(p);
    for (int k = 1; k <= d; ++k) {
        exactalg::SparsePoly der(p.vars());
        for (int i = 0; i < n; ++i) {
            if (e[i] == 0) continue;
            der += e[i] * gk.back().partial_derivative(i);
        }
        der *= Rational(1, k);
        gk.push_back(der);
    }

    std::vector<double> ed(n);
    for (int i = 0; i < n; ++i) ed[i] = to_double(e[i]);

    // Re and |.| of p(e+ix)^{-alpha} e^{i<y,x>} via characteristic roots
    auto integrand = [&](const std::vector<double>& x) {
        std::vector<double> coeffs(d + 1);
        for (int k = 0; k <= d; ++k) coeffs[k] = gk[k].evaluate_double(x);
        std::vector<double> roots = real_roots(coeffs);
        double logmod = -alpha * std::log(pe);
        double arg = 0;
        for (double t : roots) {
            double mu = -t;
            logmod -= 0.5 * alpha * std::log1p(mu * mu);
            arg += std::atan(mu);
        }
        double phase = -alpha * arg;
        for (size_t i = 0; i < y.size(); ++i) phase += y[i] * x[i];
        return std::exp(logmod) * std::cos(phase);
    };

    const double tol = std::max(cfg.rel_tol, 1e-4);
    // |p(e+ix)|^{-alpha} decays like |x|^{-d*alpha}; with the doubling
    // schedule the truncation error after radius 2R is bounded by the last
    // increment scaled by rho/(1-rho)
    const double rho = std::pow(2.0, n - d * alpha);
    if (!(rho < 1.0))
        throw convergence_error("integrand decays too slowly: need d*alpha > n");
    auto integrate_box = [&](double R) {
        if (n == 1)
            return integrate_adaptive([&](double x) { return integrand({x}); }, -R, R, tol,
                                      cfg.max_subdiv);
        auto outer_f = [&](double x1) {
            IntegralResult in = integrate_adaptive(
                [&](double x2) { return integrand({x1, x2}); }, -R, R, tol, cfg.max_subdiv);
            return in.value;
        };
        return integrate_adaptive(outer_f, -R, R, tol, cfg.max_subdiv);
    };
    double R = 16.0;
    IntegralResult inner = integrate_box(R);
    double tail_est = 0;
    bool settled = false;
    for (int grow = 0; grow < 10; ++grow) {
        IntegralResult next = integrate_box(2 * R);
        tail_est = std::abs(next.value - inner.value) * rho / (1.0 - rho);
        inner = next;
        R *= 2;
        // relative criterion for interior points, absolute floor for the
        // near-zero exterior values
        if (tail_est <= std::max(tol * std::abs(inner.value), tol)) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw convergence_error(
            "oscillatory integral truncation did not stabilize; larger alpha decays faster");
    inner.error += tail_est;

    double front = std::pow(2 * M_PI, -n);
    double expfac = 0;
    for (int i = 0; i < n; ++i) expfac += to_double(e[i]) * y[i];
    double value = front * std::exp(expfac) * inner.value;
    double err = front * std::exp(expfac) * (inner.error + tol * std::abs(inner.value));
    return {value, err};
}

}  // namespace rieszlab::special
