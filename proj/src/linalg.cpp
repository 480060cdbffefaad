#include "rieszlab/linalg.hpp"

namespace rieszlab::exactalg {

std::vector<int> rref(RationalMatrix& M) {
    const Eigen::Index rows = M.rows(), cols = M.cols();
    std::vector<int> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index p = -1;
        for (Eigen::Index i = r; i < rows; ++i) {
            if (M(i, c) != 0) { p = i; break; }
        }
        if (p < 0) continue;
        if (p != r) M.row(p).swap(M.row(r));
        M.row(r) /= M(r, c);
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i != r && M(i, c) != 0) M.row(i) -= M(i, c) * M.row(r);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int rank(const RationalMatrix& M) {
    RationalMatrix A = M;
    return static_cast<int>(rref(A).size());
}

std::vector<RationalVector> nullspace(const RationalMatrix& M) {
    RationalMatrix A = M;
    std::vector<int> pivots = rref(A);
    const Eigen::Index cols = M.cols();
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RationalVector> basis;
    for (Eigen::Index free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        RationalVector v = RationalVector::Zero(cols);
        v[free] = 1;
        for (size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -A(static_cast<Eigen::Index>(k), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RationalVector> solve(const RationalMatrix& M, const RationalVector& b) {
    RationalMatrix A(M.rows(), M.cols() + 1);
    A.leftCols(M.cols()) = M;
    A.col(M.cols()) = b;
    std::vector<int> pivots = rref(A);
    if (!pivots.empty() && pivots.back() == M.cols()) return std::nullopt;
    RationalVector x = RationalVector::Zero(M.cols());
    for (size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = A(static_cast<Eigen::Index>(k), M.cols());
    return x;
}

Rational determinant(const RationalMatrix& M) {
    if (M.rows() != M.cols()) throw structural_error("determinant of non-square matrix");
    RationalMatrix A = M;
    const Eigen::Index n = A.rows();
    Rational det(1);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = -1;
        for (Eigen::Index i = c; i < n; ++i) {
            if (A(i, c) != 0) { p = i; break; }
        }
        if (p < 0) return Rational(0);
        if (p != c) {
            A.row(p).swap(A.row(c));
            det = -det;
        }
        det *= A(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (A(i, c) != 0) A.row(i) -= (A(i, c) / A(c, c)) * A.row(c);
        }
    }
    return det;
}

RationalMatrix right_inverse(const RationalMatrix& M) {
    const Eigen::Index n = M.rows(), m = M.cols();
    RationalMatrix A(n, m + n);
    A.leftCols(m) = M;
    A.rightCols(n) = RationalMatrix::Identity(n, n);
    std::vector<int> pivots = rref(A);
    size_t row_rank = 0;
    for (int c : pivots) {
        if (c < m) ++row_rank;
    }
    if (static_cast<Eigen::Index>(row_rank) != n)
        throw structural_error("right inverse requires full row rank");
    RationalMatrix S = RationalMatrix::Zero(m, n);
    for (Eigen::Index k = 0; k < n; ++k) S.row(pivots[k]) = A.block(k, m, 1, n);
    return S;
}

Rational gram_determinant(const RationalMatrix& M) {
    return determinant(RationalMatrix(M.transpose() * M));
}

bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v) {
    if (basis.empty()) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v[i] != 0) return false;
        return true;
    }
    RationalMatrix A = columns_to_matrix(basis, static_cast<int>(v.size()));
    return solve(A, v).has_value();
}

RationalMatrix columns_to_matrix(const std::vector<RationalVector>& cols, int dim) {
    RationalMatrix M(dim, static_cast<Eigen::Index>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = cols[j];
    return M;
}

}  // namespace rieszlab::exactalg
