#include "lipnn/linalg/cholesky.hpp"

#include <cmath>
#include <string>

#include "lipnn/errors.hpp"

namespace lipnn {

namespace {

// Scalar left-looking Cholesky with an absolute floor on the pivots; writes
// the factor into A and returns the failing pivot row, or -1 on success.
Index scalar_cholesky_in_place(Matrix& A, double pivot_floor) {
    const Index n = A.rows();
    for (Index j = 0; j < n; ++j) {
        double d = A(j, j);
        for (Index k = 0; k < j; ++k) d -= A(j, k) * A(j, k);
        if (!(d > pivot_floor)) return j;
        const double ljj = std::sqrt(d);
        A(j, j) = ljj;
        for (Index i = j + 1; i < n; ++i) {
            double s = A(i, j);
            for (Index k = 0; k < j; ++k) s -= A(i, k) * A(j, k);
            A(i, j) = s / ljj;
        }
    }
    A.triangularView<Eigen::StrictlyUpper>().setZero();
    return -1;
}

// Fast path via Eigen's blocked LLT, which leaves the pivot check to a scan
// of the factor diagonal (the j-th elimination pivot is L(j,j)^2). When the
// LLT itself aborts, the scalar loop redoes the elimination to either locate
// the exact failing pivot or settle a borderline case.
Index cholesky_in_place(Matrix& A, double pivot_floor) {
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() != Eigen::Success) return scalar_cholesky_in_place(A, pivot_floor);
    Matrix L = llt.matrixL();
    for (Index j = 0; j < L.rows(); ++j)
        if (!(L(j, j) * L(j, j) > pivot_floor)) return j;
    A = std::move(L);
    return -1;
}

double max_diagonal(const BlockTridiagonalSymmetric& M) {
    double m = 0.0;
    for (const auto& d : M.diag) m = std::max(m, d.diagonal().maxCoeff());
    return m;
}

}  // namespace

Matrix dense_cholesky(const Matrix& A, double margin) {
    if (A.rows() != A.cols())
        throw ShapeMismatch("cholesky needs a square matrix");
    const double scale = A.cwiseAbs().maxCoeff();
    if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * std::max(scale, 1e-300))
        throw ShapeMismatch("cholesky needs a symmetric matrix");

    Matrix L = A;
    const double floor = margin * std::max(A.diagonal().maxCoeff(), 0.0);
    const Index bad = cholesky_in_place(L, floor);
    if (bad >= 0)
        throw NotPositiveDefinite("pivot " + std::to_string(bad) + " not positive", bad);
    return L;
}

BlockCholesky block_cholesky(const BlockTridiagonalSymmetric& M, double margin) {
    M.validate();
    const std::size_t p1 = M.num_blocks();
    const double floor = margin * std::max(max_diagonal(M), 0.0);

    BlockCholesky c;
    c.D.reserve(p1);
    c.R.reserve(p1 - 1);
    for (std::size_t i = 0; i < p1; ++i) {
        Matrix Di = M.diag[i];
        if (i > 0) Di.noalias() -= c.R[i - 1] * c.R[i - 1].transpose();
        if (cholesky_in_place(Di, floor) >= 0)
            throw NotPositiveDefinite("diagonal block " + std::to_string(i) + " not positive definite",
                                      static_cast<std::ptrdiff_t>(i));
        c.D.push_back(std::move(Di));
        if (i + 1 < p1) {
            // R_i D_i^T = B_i  =>  R_i = B_i D_i^{-T}
            Matrix Ri = c.D[i]
                            .triangularView<Eigen::Lower>()
                            .transpose()
                            .solve<Eigen::OnTheRight>(M.sub[i]);
            c.R.push_back(std::move(Ri));
        }
    }
    return c;
}

SelectedInverse selected_inverse(const BlockCholesky& c) {
    const std::size_t p1 = c.num_blocks();
    SelectedInverse inv;
    inv.S.resize(p1);
    inv.K.resize(p1 - 1);

    auto gram_inverse = [](const Matrix& D) {
        // (D D^T)^{-1} = D^{-T} D^{-1}
        Matrix Dinv = D.triangularView<Eigen::Lower>().solve(
            Matrix::Identity(D.rows(), D.rows()));
        Matrix G = Dinv.transpose() * Dinv;
        return Matrix(0.5 * (G + G.transpose()));
    };

    inv.S[p1 - 1] = gram_inverse(c.D[p1 - 1]);
    for (std::size_t ip = p1 - 1; ip-- > 0;) {
        // T = R_i D_i^{-1}, shared between K_i and S_i
        Matrix T = c.D[ip].triangularView<Eigen::Lower>().solve<Eigen::OnTheRight>(c.R[ip]);
        inv.K[ip] = -inv.S[ip + 1] * T;
        Matrix Si = gram_inverse(c.D[ip]) - inv.K[ip].transpose() * T;
        inv.S[ip] = 0.5 * (Si + Si.transpose());
    }
    return inv;
}

SelectedInverse selected_inverse_dense(const BlockTridiagonalSymmetric& M, double margin) {
    const Matrix full = M.assemble();
    const Matrix L = dense_cholesky(full, margin);
    Matrix Linv = L.triangularView<Eigen::Lower>().solve(
        Matrix::Identity(full.rows(), full.rows()));
    Matrix inv_full = Linv.transpose() * Linv;

    SelectedInverse inv;
    const auto sizes = M.block_sizes();
    Index off = 0;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        inv.S.push_back(inv_full.block(off, off, sizes[i], sizes[i]));
        if (i + 1 < sizes.size())
            inv.K.push_back(inv_full.block(off + sizes[i], off, sizes[i + 1], sizes[i]));
        off += sizes[i];
    }
    return inv;
}

double logdet(const BlockCholesky& c) {
    double s = 0.0;
    for (const auto& D : c.D) s += D.diagonal().array().log().sum();
    return 2.0 * s;
}

double logdet(const Matrix& dense_factor) {
    return 2.0 * dense_factor.diagonal().array().log().sum();
}

}  // namespace lipnn
