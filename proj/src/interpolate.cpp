#include "rieszlab/interpolate.hpp"

#include "rieszlab/linalg.hpp"

namespace rieszlab::exactalg {

std::vector<std::vector<int>> monomial_basis(int degree, int dimension, bool homogeneous) {
    std::vector<std::vector<int>> out;
    if (dimension == 0) return out;
    std::vector<int> cur(dimension, 0);
    auto rec = [&](auto&& self, int pos, int rem) -> void {
        if (pos == dimension - 1) {
            cur[pos] = rem;
            out.push_back(cur);
            cur[pos] = 0;
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur[pos] = k;
            self(self, pos + 1, rem - k);
        }
        cur[pos] = 0;
    };
    for (int d = homogeneous ? degree : 0; d <= degree; ++d) rec(rec, 0, d);
    return out;
}

SparsePoly interpolate(int degree, int dimension,
                       const std::vector<std::pair<RationalVector, Rational>>& samples,
                       bool homogeneous,
                       const std::vector<std::string>& vars_in) {
    std::vector<std::string> vars = vars_in.empty() ? default_vars(dimension, "y") : vars_in;
    if (static_cast<int>(vars.size()) != dimension)
        throw structural_error("variable list length mismatch");
    auto basis = monomial_basis(degree, dimension, homogeneous);
    const size_t ncoef = basis.size();
    if (samples.size() < ncoef)
        throw interpolation_error("underdetermined interpolation: " +
                                  std::to_string(ncoef) + " coefficients, " +
                                  std::to_string(samples.size()) + " samples");
    RationalMatrix A(static_cast<Eigen::Index>(samples.size()),
                     static_cast<Eigen::Index>(ncoef + 1));
    for (size_t r = 0; r < samples.size(); ++r) {
        const auto& [pt, val] = samples[r];
        if (pt.size() != dimension) throw structural_error("sample point length mismatch");
        for (size_t c = 0; c < ncoef; ++c) {
            Rational m(1);
            for (int i = 0; i < dimension; ++i)
                if (basis[c][i] > 0) m *= pow_rational(pt[i], basis[c][i]);
            A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m;
        }
        A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(ncoef)) = val;
    }
    std::vector<int> pivots = rref(A);
    if (!pivots.empty() && pivots.back() == static_cast<int>(ncoef))
        throw interpolation_error("inconsistent interpolation samples for degree " +
                                  std::to_string(degree));
    if (pivots.size() < ncoef)
        throw interpolation_error("singular interpolation system: rank defect " +
                                  std::to_string(ncoef - pivots.size()));
    SparsePoly p(vars);
    for (size_t k = 0; k < ncoef; ++k)
        p.add_term(basis[pivots[k]], A(static_cast<Eigen::Index>(k),
                                       static_cast<Eigen::Index>(ncoef)));
    return p;
}

}  // namespace rieszlab::exactalg
