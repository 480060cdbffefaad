#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rieszlab/documents.hpp"
#include "rieszlab/version.hpp"

using namespace rieszlab;
using nlohmann::json;

namespace {

struct CliOptions {
    std::string input;
    std::string output;
    long samples = -1;
    long long seed = -1;
    double tol = -1;
    int max_order = -1;
    int threads = -1;
    int trials = -1;
    bool witness_poly = false;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("input", opt.input, "problem or matrix file (JSON)")->required();
    cmd->add_option("-o,--output", opt.output, "output path (default stdout)");
    cmd->add_option("--samples", opt.samples, "Monte Carlo sample count");
    cmd->add_option("--seed", opt.seed, "random seed (env RIESZLAB_SEED overrides)");
    cmd->add_option("--tol", opt.tol, "quadrature relative tolerance");
    cmd->add_option("--max-order", opt.max_order, "refuter derivative order bound");
    cmd->add_option("--threads", opt.threads, "worker threads (0 = all cores)");
    cmd->add_option("--trials", opt.trials, "hyperbolicity trial count");
}

// file config < command line flags < environment seed
void resolve_config(docs::ProblemSpec& spec, const CliOptions& opt) {
    if (opt.samples >= 0) spec.quad.samples = opt.samples;
    if (opt.seed >= 0) spec.quad.seed = static_cast<uint64_t>(opt.seed);
    if (opt.tol >= 0) spec.quad.rel_tol = opt.tol;
    if (opt.threads >= 0) spec.quad.threads = opt.threads;
    if (opt.max_order >= 0) spec.max_order = opt.max_order;
    if (opt.trials >= 0) spec.trials = opt.trials;
    if (const char* env = std::getenv("RIESZLAB_SEED")) {
        spec.quad.seed = std::strtoull(env, nullptr, 10);
    }
}

void emit(const json& doc, const docs::ProblemSpec& spec, const CliOptions& opt) {
    json out = doc;
    out["meta"] = {{"tool", "rieszlab"},
                   {"version", kVersion},
                   {"seed", spec.quad.seed},
                   {"config", docs::config_to_json(spec.quad, spec.max_order, spec.trials)}};
    std::string text = out.dump(2) + "\n";
    if (opt.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.output);
        if (!f) throw docs::parse_error("cannot write output file: " + opt.output);
        f << text;
    }
}

exactalg::SparsePoly named_polynomial(const docs::ProblemSpec& spec) {
    if (spec.name == "e23") return hyperbolicity::elementary_symmetric(2, 3);
    if (spec.name == "e24") return hyperbolicity::elementary_symmetric(2, 4);
    if (spec.name == "elementary") return hyperbolicity::elementary_symmetric(spec.m, spec.n);
    if (spec.name == "determinant2x2") return hyperbolicity::symmetric_determinant_2x2().p;
    throw docs::parse_error("unknown named polynomial: " + spec.name);
}

RationalVector default_direction(const docs::ProblemSpec& spec, int nvars) {
    if (spec.e) return *spec.e;
    if (spec.name == "determinant2x2") return hyperbolicity::symmetric_determinant_2x2().e;
    RationalVector e(nvars);
    for (int i = 0; i < nvars; ++i) e[i] = 1;
    return e;
}

certify::CertifyProblem to_certify_problem(const docs::ProblemSpec& spec) {
    certify::CertifyProblem prob;
    using Kind = certify::CertifyProblem::Kind;
    if (spec.kind == "linear_forms") {
        prob.kind = Kind::linear_forms;
        prob.L = *spec.linear_forms;
        if (spec.alpha.empty()) {
            prob.alpha_int.assign(spec.linear_forms->cols(), 1);
        } else {
            for (const auto& a : spec.alpha) {
                if (denominator(a) != 1 || a < 1)
                    throw docs::parse_error(
                        "linear_forms certification needs integer exponents >= 1");
                prob.alpha_int.push_back(numerator(a).convert_to<long>());
            }
        }
        Rational total(0);
        for (long a : prob.alpha_int) total += a;
        prob.alpha = total;
        return prob;
    }
    if (spec.kind == "raw_polynomial") {
        prob.kind = Kind::raw;
        prob.poly = spec.polynomial;
        if (!spec.s) throw docs::parse_error("raw_polynomial problems need the exponent s");
        prob.alpha = -*spec.s;
        if (spec.e) prob.e = spec.e;
        return prob;
    }
    // named
    if (!spec.s) throw docs::parse_error("named problems need alpha (or s)");
    prob.alpha = -*spec.s;
    if (spec.name == "e23") prob.kind = Kind::e23;
    else if (spec.name == "e24") prob.kind = Kind::e24;
    else if (spec.name == "elementary") {
        prob.kind = Kind::elementary;
        prob.m = spec.m;
        prob.n = spec.n;
    } else if (spec.name == "determinant") {
        prob.kind = Kind::determinant;
        prob.m = spec.m;
    } else if (spec.name == "cubic") {
        prob.kind = Kind::cubic;
        prob.v = spec.v;
    } else if (spec.name == "e35_stage") {
        prob.kind = Kind::e35_stage;
    } else {
        throw docs::parse_error("unknown named problem: " + spec.name);
    }
    return prob;
}

int run_chambers(const CliOptions& opt) {
    docs::ProblemSpec spec;
    try {
        spec = docs::load_problem(opt.input);
    } catch (const docs::parse_error&) {
        spec.kind = "linear_forms";
        spec.linear_forms = docs::load_matrix(opt.input);
    }
    resolve_config(spec, opt);
    if (!spec.linear_forms) throw docs::parse_error("chambers needs a matrix input");
    auto cc = polyhedra::chamber_complex(*spec.linear_forms);
    emit(docs::chamber_to_json(cc), spec, opt);
    return 0;
}

int run_kernel(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    if (spec.kind == "linear_forms") {
        std::vector<long> alpha;
        if (spec.alpha.empty()) alpha.assign(spec.linear_forms->cols(), 1);
        else
            for (const auto& a : spec.alpha) {
                if (denominator(a) != 1 || a < 1)
                    throw docs::parse_error("piecewise kernels need integer exponents >= 1");
                alpha.push_back(numerator(a).convert_to<long>());
            }
        auto k = kernels::kernel_linear_forms(*spec.linear_forms, alpha);
        emit(docs::piecewise_kernel_to_json(k), spec, opt);
        return 0;
    }
    if (spec.kind == "named_polynomial") {
        Rational alpha = spec.s ? -*spec.s : Rational(1);
        std::optional<kernels::ClosedFormKernel> closed;
        if (spec.name == "e23") closed = kernels::ClosedFormKernel::e23(alpha);
        else if (spec.name == "e24") closed = kernels::ClosedFormKernel::e24(alpha);
        else if (spec.name == "determinant")
            closed = kernels::ClosedFormKernel::determinant(spec.m, alpha);
        else if (spec.name == "cubic")
            closed = kernels::ClosedFormKernel::cubic_2f1(spec.v, alpha);
        else if (spec.name != "e35_stage")
            throw docs::parse_error("no kernel construction for name: " + spec.name);
        json doc;
        if (closed) {
            doc = docs::closed_form_to_json(*closed);
        } else {
            doc["kind"] = "e35_stage";
            doc["alpha"] = to_string(alpha);
        }
        if (!spec.y.empty()) {
            double value = closed
                               ? kernels::closed_form_kernel(*closed, spec.y)
                               : kernels::kernel_e35_stage(to_double(alpha), spec.y, spec.quad);
            doc["value_at_y"] = docs::format_double(value);
        }
        emit(doc, spec, opt);
        return 0;
    }
    throw docs::parse_error("kernel construction needs linear_forms or a named polynomial");
}

int run_certify(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    certify::CertifyProblem prob = to_certify_problem(spec);
    certify::CertifyConfig config;
    config.quad = spec.quad;
    config.max_order = spec.max_order;
    config.hyperbolicity_trials = spec.trials;
    config.keep_numerator = opt.witness_poly;
    certify::Certificate cert = certify::certify(prob, config);
    emit(docs::certificate_to_json(cert), spec, opt);
    return 0;
}

int run_refute(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    exactalg::SparsePoly p;
    if (spec.kind == "raw_polynomial") p = *spec.polynomial;
    else if (spec.kind == "named_polynomial") p = named_polynomial(spec);
    else throw docs::parse_error("refute needs a polynomial problem");
    if (!spec.s) throw docs::parse_error("refute needs the exponent s (or alpha)");
    RationalVector e = default_direction(spec, p.nvars());
    std::optional<hyperbolicity::HyperbolicInstance> inst;
    if (p.evaluate(e) > 0) inst = hyperbolicity::HyperbolicInstance::make(p, e);
    auto points = certify::default_refuter_points(p.nvars(), spec.quad.seed);
    certify::Certificate cert = certify::refute_cm(p, *spec.s, spec.max_order, points, inst,
                                                   opt.witness_poly, spec.quad.seed);
    emit(docs::certificate_to_json(cert), spec, opt);
    return cert.status == certify::Certificate::Status::CM_REFUTED ? 1 : 0;
}

int run_otideal(const CliOptions& opt) {
    docs::ProblemSpec spec;
    try {
        spec = docs::load_problem(opt.input);
    } catch (const docs::parse_error&) {
        spec.kind = "linear_forms";
        spec.linear_forms = docs::load_matrix(opt.input);
    }
    resolve_config(spec, opt);
    if (!spec.linear_forms) throw docs::parse_error("otideal needs a matrix input");
    auto gens = convalg::orlik_terao_generators(*spec.linear_forms);
    emit(docs::generators_to_json(gens), spec, opt);
    return 0;
}

int run_laplace_check(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    if (!spec.x) throw docs::parse_error("laplace-check needs the point x");
    certify::CertifyProblem prob = to_certify_problem(spec);
    certify::LaplaceCheck check = certify::laplace_check_for(prob, *spec.x, spec.quad);
    json doc;
    json x = json::array();
    for (const auto& q : check.x) x.push_back(to_string(q));
    doc["x"] = x;
    doc["target"] = docs::format_double(check.target);
    doc["estimate"] = docs::format_double(check.estimate);
    doc["relative_error"] = docs::format_double(check.relative_error);
    doc["mc_stderr"] = docs::format_double(check.mc_stderr);
    doc["samples"] = check.samples;
    doc["seed"] = check.seed;
    emit(doc, spec, opt);
    return 0;
}

int run_hyperbolicity(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    exactalg::SparsePoly p;
    if (spec.kind == "raw_polynomial") p = *spec.polynomial;
    else if (spec.kind == "named_polynomial") p = named_polynomial(spec);
    else throw docs::parse_error("hyperbolicity needs a polynomial problem");
    RationalVector e = default_direction(spec, p.nvars());
    auto inst = hyperbolicity::HyperbolicInstance::make(p, e);
    auto rep = hyperbolicity::hyperbolicity_check(inst, spec.trials, spec.quad.seed);
    json doc = docs::hyperbolicity_to_json(rep);
    if (spec.x) doc["cone_membership"] = hyperbolicity::cone_membership(inst, *spec.x);
    emit(doc, spec, opt);
    return 0;
}

int run_garding(const CliOptions& opt) {
    docs::ProblemSpec spec = docs::load_problem(opt.input);
    resolve_config(spec, opt);
    exactalg::SparsePoly p;
    if (spec.kind == "raw_polynomial") p = *spec.polynomial;
    else if (spec.kind == "named_polynomial") p = named_polynomial(spec);
    else throw docs::parse_error("garding needs a polynomial problem");
    if (!spec.s) throw docs::parse_error("garding needs alpha (or s)");
    if (spec.y.empty()) throw docs::parse_error("garding needs the point y");
    RationalVector e = default_direction(spec, p.nvars());
    double alpha = -to_double(*spec.s);
    auto r = special::garding_numeric(p, e, alpha, spec.y, spec.quad);
    json doc;
    doc["value"] = docs::format_double(r.value);
    doc["error_estimate"] = docs::format_double(r.error);
    doc["alpha"] = docs::format_double(alpha);
    json y = json::array();
    for (double v : spec.y) y.push_back(docs::format_double(v));
    doc["y"] = y;
    emit(doc, spec, opt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Riesz kernels and complete monotonicity certificates"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CliOptions opt;
    auto* chambers = app.add_subcommand("chambers", "chamber complex of a matrix");
    add_common(chambers, opt);
    auto* kernel = app.add_subcommand("kernel", "construct a Riesz kernel");
    add_common(kernel, opt);
    auto* cert = app.add_subcommand("certify", "decide complete monotonicity");
    add_common(cert, opt);
    cert->add_flag("--witness-poly", opt.witness_poly, "include the full witness numerator");
    auto* refute = app.add_subcommand("refute", "search for an exact refutation");
    add_common(refute, opt);
    refute->add_flag("--witness-poly", opt.witness_poly, "include the full witness numerator");
    auto* otideal = app.add_subcommand("otideal", "circuit generators of the reciprocal algebra");
    add_common(otideal, opt);
    auto* laplace = app.add_subcommand("laplace-check", "Monte Carlo Laplace residual");
    add_common(laplace, opt);
    auto* hyp = app.add_subcommand("hyperbolicity", "sampled hyperbolicity check");
    add_common(hyp, opt);
    auto* garding = app.add_subcommand("garding", "numeric kernel from the complex integral");
    add_common(garding, opt);

    CLI11_PARSE(app, argc, argv);

    try {
        if (chambers->parsed()) return run_chambers(opt);
        if (kernel->parsed()) return run_kernel(opt);
        if (cert->parsed()) return run_certify(opt);
        if (refute->parsed()) return run_refute(opt);
        if (otideal->parsed()) return run_otideal(opt);
        if (laplace->parsed()) return run_laplace_check(opt);
        if (hyp->parsed()) return run_hyperbolicity(opt);
        if (garding->parsed()) return run_garding(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
