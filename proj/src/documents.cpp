#include "rieszlab/documents.hpp"

#include <cstdio>
#include <fstream>

namespace rieszlab::docs {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw parse_error("expected a rational as string");
    return parse_rational(j.get<std::string>());
}

json matrix_to_json(const RationalMatrix& M) {
    json out;
    out["rows"] = static_cast<int>(M.rows());
    out["cols"] = static_cast<int>(M.cols());
    json entries = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) entries.push_back(to_string(M(i, j)));
    out["entries"] = entries;
    return out;
}

RationalMatrix matrix_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw parse_error("matrix needs fields rows, cols, entries");
    int rows = j.at("rows").get<int>(), cols = j.at("cols").get<int>();
    const json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != rows * cols)
        throw parse_error("matrix entry count does not match rows*cols");
    RationalMatrix M(rows, cols);
    int idx = 0;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) M(r, c) = rational_from_json(entries[idx++]);
    return M;
}

json vector_to_json(const RationalVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
    return out;
}

RationalVector vector_from_json(const json& j) {
    RationalVector v(static_cast<Eigen::Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v[static_cast<Eigen::Index>(i)] = rational_from_json(j[i]);
    return v;
}

json poly_to_json(const exactalg::SparsePoly& p) {
    json out;
    out["variables"] = p.vars();
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json t;
        t["exponents"] = e;
        t["coeff"] = to_string(c);
        terms.push_back(t);
    }
    out["terms"] = terms;
    return out;
}

exactalg::SparsePoly poly_from_json(const json& j) {
    if (!j.contains("variables") || !j.contains("terms"))
        throw parse_error("polynomial needs fields variables, terms");
    exactalg::SparsePoly p(j.at("variables").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
        p.add_term(t.at("exponents").get<std::vector<int>>(),
                   rational_from_json(t.at("coeff")));
    }
    return p;
}

namespace {

json normal_to_json(const RationalVector& n) {
    json out = json::array();
    RationalVector prim = integer_primitive(n);
    for (Eigen::Index i = 0; i < prim.size(); ++i) out.push_back(to_string(prim[i]));
    return out;
}

}  // namespace

json chamber_to_json(const polyhedra::ChamberComplex& cc) {
    json out;
    out["matrix"] = matrix_to_json(cc.L);
    json cells = json::array();
    for (size_t c = 0; c < cc.cells.size(); ++c) {
        json cell;
        json normals = json::array();
        for (const auto& h : cc.cells[c].inequalities) normals.push_back(normal_to_json(h.normal));
        cell["normals"] = normals;
        cell["adjacent"] = cc.adjacent[c];
        cells.push_back(cell);
    }
    out["cells"] = cells;
    json walls = json::array();
    for (const auto& w : cc.walls) {
        json wall;
        wall["cells"] = {w.cell_a, w.cell_b};
        wall["normal"] = normal_to_json(w.normal);
        walls.push_back(wall);
    }
    out["walls"] = walls;
    return out;
}

json piecewise_kernel_to_json(const kernels::PiecewiseKernel& k) {
    json out = chamber_to_json(k.complex);
    json pieces = json::array();
    for (const auto& p : k.pieces) pieces.push_back(poly_to_json(p));
    out["pieces"] = pieces;
    out["alpha"] = k.alpha;
    out["total_degree"] = k.total_degree;
    out["smoothness_order"] = k.smoothness_order;
    return out;
}

json closed_form_to_json(const kernels::ClosedFormKernel& k) {
    json out;
    using Kind = kernels::ClosedFormKernel::Kind;
    switch (k.kind) {
        case Kind::monomial: {
            out["kind"] = "monomial";
            json alphas = json::array();
            for (const auto& a : k.alphas) alphas.push_back(to_string(a));
            out["alpha"] = alphas;
            break;
        }
        case Kind::e23:
            out["kind"] = "e23";
            out["alpha"] = to_string(k.alpha);
            break;
        case Kind::e24:
            out["kind"] = "e24";
            out["alpha"] = to_string(k.alpha);
            break;
        case Kind::determinant:
            out["kind"] = "determinant";
            out["alpha"] = to_string(k.alpha);
            out["m"] = k.m;
            break;
        case Kind::cubic_2f1:
            out["kind"] = "cubic_2f1";
            out["alpha"] = to_string(k.alpha);
            out["v"] = to_string(k.v);
            break;
    }
    return out;
}

json generators_to_json(const std::vector<exactalg::SparsePoly>& gens) {
    json out;
    json list = json::array();
    for (const auto& g : gens) list.push_back(poly_to_json(g));
    out["generators"] = list;
    return out;
}

json hyperbolicity_to_json(const hyperbolicity::HyperbolicityReport& rep) {
    json out;
    out["passed"] = rep.passed;
    out["trials"] = rep.trials;
    out["seed"] = rep.seed;
    if (rep.witness) {
        out["witness"] = vector_to_json(*rep.witness);
        out["nonreal_roots"] = rep.nonreal_roots;
    }
    if (!rep.note.empty()) out["note"] = rep.note;
    return out;
}

json certificate_to_json(const certify::Certificate& cert) {
    json out;
    switch (cert.status) {
        case certify::Certificate::Status::CM_CERTIFIED: out["status"] = "CM_CERTIFIED"; break;
        case certify::Certificate::Status::CM_REFUTED: out["status"] = "CM_REFUTED"; break;
        case certify::Certificate::Status::UNKNOWN: out["status"] = "UNKNOWN"; break;
    }
    out["problem"] = cert.problem;
    if (!cert.kernel_description.empty()) out["kernel"] = cert.kernel_description;
    if (cert.witness) {
        json w;
        w["multiindex"] = cert.witness->multiindex;
        json pt = json::array();
        for (const auto& q : cert.witness->point) pt.push_back(to_string(q));
        w["point"] = pt;
        w["value"] = {{"rational", to_string(cert.witness->value.coeff)},
                      {"base", to_string(cert.witness->value.base)},
                      {"exponent", to_string(cert.witness->value.exponent)},
                      {"float", format_double(cert.witness->value.as_double())}};
        w["numerator_terms"] = cert.witness->numerator_terms;
        w["numerator_degree"] = cert.witness->numerator_degree;
        if (cert.witness->numerator) w["numerator"] = poly_to_json(*cert.witness->numerator);
        out["witness"] = w;
    }
    if (!cert.laplace_checks.empty()) {
        json checks = json::array();
        for (const auto& c : cert.laplace_checks) {
            json e;
            json x = json::array();
            for (const auto& q : c.x) x.push_back(to_string(q));
            e["x"] = x;
            e["target"] = format_double(c.target);
            e["estimate"] = format_double(c.estimate);
            e["relative_error"] = format_double(c.relative_error);
            e["mc_stderr"] = format_double(c.mc_stderr);
            e["samples"] = c.samples;
            e["seed"] = c.seed;
            checks.push_back(e);
        }
        out["laplace_checks"] = checks;
    }
    if (cert.hyperbolicity_report)
        out["hyperbolicity"] = hyperbolicity_to_json(*cert.hyperbolicity_report);
    if (cert.nonnegativity_samples > 0) {
        out["nonnegativity"] = {{"samples", cert.nonnegativity_samples},
                                {"passed", cert.nonnegativity_passed}};
    }
    if (!cert.reason.empty()) out["reason"] = cert.reason;
    return out;
}

certify::Certificate certificate_from_json(const json& j) {
    certify::Certificate cert;
    std::string status = j.at("status").get<std::string>();
    if (status == "CM_CERTIFIED") cert.status = certify::Certificate::Status::CM_CERTIFIED;
    else if (status == "CM_REFUTED") cert.status = certify::Certificate::Status::CM_REFUTED;
    else cert.status = certify::Certificate::Status::UNKNOWN;
    cert.problem = j.value("problem", "");
    cert.kernel_description = j.value("kernel", "");
    cert.reason = j.value("reason", "");
    if (j.contains("witness")) {
        const json& w = j.at("witness");
        certify::RefutationWitness rw;
        rw.multiindex = w.at("multiindex").get<std::vector<int>>();
        for (const auto& q : w.at("point")) rw.point.push_back(rational_from_json(q));
        rw.value.coeff = rational_from_json(w.at("value").at("rational"));
        rw.value.base = rational_from_json(w.at("value").at("base"));
        rw.value.exponent = rational_from_json(w.at("value").at("exponent"));
        rw.numerator_terms = w.at("numerator_terms").get<int>();
        rw.numerator_degree = w.at("numerator_degree").get<int>();
        if (w.contains("numerator")) rw.numerator = poly_from_json(w.at("numerator"));
        cert.witness = std::move(rw);
    }
    if (j.contains("laplace_checks")) {
        for (const auto& e : j.at("laplace_checks")) {
            certify::LaplaceCheck c;
            for (const auto& q : e.at("x")) c.x.push_back(rational_from_json(q));
            c.target = std::stod(e.at("target").get<std::string>());
            c.estimate = std::stod(e.at("estimate").get<std::string>());
            c.relative_error = std::stod(e.at("relative_error").get<std::string>());
            c.mc_stderr = std::stod(e.at("mc_stderr").get<std::string>());
            c.samples = e.at("samples").get<long>();
            c.seed = e.at("seed").get<uint64_t>();
            cert.laplace_checks.push_back(std::move(c));
        }
    }
    if (j.contains("hyperbolicity")) {
        const json& h = j.at("hyperbolicity");
        hyperbolicity::HyperbolicityReport rep;
        rep.passed = h.at("passed").get<bool>();
        rep.trials = h.at("trials").get<int>();
        rep.seed = h.at("seed").get<uint64_t>();
        if (h.contains("witness")) {
            rep.witness = vector_from_json(h.at("witness"));
            rep.nonreal_roots = h.value("nonreal_roots", 0);
        }
        rep.note = h.value("note", "");
        cert.hyperbolicity_report = std::move(rep);
    }
    if (j.contains("nonnegativity")) {
        cert.nonnegativity_samples = j.at("nonnegativity").at("samples").get<long>();
        cert.nonnegativity_passed = j.at("nonnegativity").at("passed").get<bool>();
    }
    return cert;
}

ProblemSpec problem_from_json(const json& j) {
    ProblemSpec spec;
    spec.kind = j.value("kind", "");
    if (spec.kind != "linear_forms" && spec.kind != "named_polynomial" &&
        spec.kind != "raw_polynomial")
        throw parse_error("kind must be linear_forms, named_polynomial or raw_polynomial");
    int payloads = 0;
    if (j.contains("linear_forms")) ++payloads;
    if (j.contains("polynomial")) ++payloads;
    if (j.contains("name")) ++payloads;
    if (payloads != 1) throw parse_error("exactly one payload (linear_forms, polynomial, name)");
    if (spec.kind == "linear_forms") {
        if (!j.contains("linear_forms")) throw parse_error("linear_forms payload missing");
        spec.linear_forms = matrix_from_json(j.at("linear_forms"));
        if (j.contains("alpha")) {
            for (const auto& a : j.at("alpha")) spec.alpha.push_back(rational_from_json(a));
            if (static_cast<Eigen::Index>(spec.alpha.size()) != spec.linear_forms->cols())
                throw parse_error("alpha length must match the number of forms");
        }
    } else if (spec.kind == "raw_polynomial") {
        if (!j.contains("polynomial")) throw parse_error("polynomial payload missing");
        spec.polynomial = poly_from_json(j.at("polynomial"));
    } else {
        if (!j.contains("name")) throw parse_error("name payload missing");
        spec.name = j.at("name").get<std::string>();
        spec.m = j.value("m", 0);
        spec.n = j.value("n", 0);
        if (j.contains("v")) spec.v = rational_from_json(j.at("v"));
        if (j.contains("alpha") && j.at("alpha").is_array())
            for (const auto& a : j.at("alpha")) spec.alpha.push_back(rational_from_json(a));
        else if (j.contains("alpha"))
            spec.s = -rational_from_json(j.at("alpha"));
    }
    if (j.contains("s")) spec.s = rational_from_json(j.at("s"));
    if (j.contains("e")) spec.e = vector_from_json(j.at("e"));
    if (j.contains("x")) spec.x = vector_from_json(j.at("x"));
    if (j.contains("y")) spec.y = j.at("y").get<std::vector<double>>();
    if (j.contains("config")) {
        const json& c = j.at("config");
        if (c.contains("samples")) spec.quad.samples = c.at("samples").get<long>();
        if (c.contains("seed")) spec.quad.seed = c.at("seed").get<uint64_t>();
        if (c.contains("tol")) spec.quad.rel_tol = c.at("tol").get<double>();
        if (c.contains("threads")) spec.quad.threads = c.at("threads").get<int>();
        if (c.contains("max_order")) spec.max_order = c.at("max_order").get<int>();
        if (c.contains("trials")) spec.trials = c.at("trials").get<int>();
    }
    return spec;
}

namespace {

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open input file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error("cannot parse " + path + ": " + e.what());
    }
    return j;
}

}  // namespace

ProblemSpec load_problem(const std::string& path) {
    return problem_from_json(load_json_file(path));
}

RationalMatrix load_matrix(const std::string& path) {
    json j = load_json_file(path);
    if (j.contains("linear_forms")) return matrix_from_json(j.at("linear_forms"));
    return matrix_from_json(j);
}

json config_to_json(const special::QuadratureConfig& quad, int max_order, int trials) {
    json c;
    c["samples"] = quad.samples;
    c["seed"] = quad.seed;
    c["tol"] = format_double(quad.rel_tol);
    c["max_subdiv"] = quad.max_subdiv;
    c["threads"] = quad.threads;
    c["max_order"] = max_order;
    c["trials"] = trials;
    return c;
}

}  // namespace rieszlab::docs
