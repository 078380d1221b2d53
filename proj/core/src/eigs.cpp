#include "lipnn/linalg/eigs.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lipnn/errors.hpp"

namespace lipnn {

SpectralNormResult spectral_norm(const Matrix& W, double tol) {
    if (W.size() == 0) throw ShapeMismatch("spectral_norm of an empty matrix");
    if (!(tol > 0.0)) throw Error("spectral_norm tolerance must be positive");

    // Fixed-seed start vector keeps results reproducible across runs.
    std::mt19937_64 rng(0x5eed5eedULL);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Vector v(W.cols());
    for (Index i = 0; i < v.size(); ++i) v(i) = uni(rng);
    const double vnorm = v.norm();
    if (vnorm == 0.0) v(0) = 1.0; else v /= vnorm;

    const long cap = 10 * std::max(W.rows(), W.cols()) + 100;
    double sigma = 0.0;
    for (long it = 0; it < cap; ++it) {
        Vector u = W * v;
        const double s = u.norm();
        if (s == 0.0) {
            if (W.cwiseAbs().maxCoeff() == 0.0) return {0.0, true};
            // start vector landed in the null space; redraw
            for (Index i = 0; i < v.size(); ++i) v(i) = uni(rng);
            v.normalize();
            continue;
        }
        Vector next = W.transpose() * u;
        const double nn = next.norm();
        if (nn == 0.0) return {s, true};
        v = next / nn;
        if (std::abs(s - sigma) <= tol * std::max(s, 1e-300)) return {s, true};
        sigma = s;
    }
    return {sigma, false};
}

double min_eigenvalue(const Matrix& A) {
    return min_eigenpair(A).first;
}

std::pair<double, Vector> min_eigenpair(const Matrix& A) {
    if (A.rows() != A.cols()) throw ShapeMismatch("min_eigenvalue needs a square matrix");
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (A + A.transpose()));
    if (es.info() != Eigen::Success)
        throw NonConvergence("symmetric eigensolver failed");
    return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

namespace {

Vector block_tridiagonal_matvec(const BlockTridiagonalSymmetric& M,
                                const std::vector<Index>& offsets, const Vector& x) {
    Vector y = Vector::Zero(x.size());
    const std::size_t blocks = M.diag.size();
    for (std::size_t i = 0; i < blocks; ++i) {
        const Index o = offsets[i];
        const Index m = M.diag[i].rows();
        y.segment(o, m).noalias() += M.diag[i] * x.segment(o, m);
        if (i + 1 < blocks) {
            const Index o2 = offsets[i + 1];
            const Index m2 = M.sub[i].rows();
            y.segment(o2, m2).noalias() += M.sub[i] * x.segment(o, m);
            y.segment(o, m).noalias() += M.sub[i].transpose() * x.segment(o2, m2);
        }
    }
    return y;
}

}  // namespace

std::pair<double, Vector> min_eigenpair(const BlockTridiagonalSymmetric& M,
                                        const Vector* start) {
    const Index n = M.dim();
    std::vector<Index> offsets(M.diag.size(), 0);
    for (std::size_t i = 1; i < M.diag.size(); ++i)
        offsets[i] = offsets[i - 1] + M.diag[i - 1].rows();

    // Gershgorin upper bound on the spectrum; Lanczos then runs on
    // shift*I - M, whose largest eigenvalue is shift - min_eig(M).
    Vector abs_row_sums = Vector::Zero(n);
    for (std::size_t i = 0; i < M.diag.size(); ++i) {
        abs_row_sums.segment(offsets[i], M.diag[i].rows()) +=
            M.diag[i].cwiseAbs().rowwise().sum();
        if (i + 1 < M.diag.size()) {
            abs_row_sums.segment(offsets[i + 1], M.sub[i].rows()) +=
                M.sub[i].cwiseAbs().rowwise().sum();
            abs_row_sums.segment(offsets[i], M.sub[i].cols()) +=
                M.sub[i].cwiseAbs().colwise().sum().transpose();
        }
    }
    const double shift = abs_row_sums.maxCoeff() + 1.0;
    const double scale = std::max(abs_row_sums.maxCoeff(), 1e-30);

    const int max_iter = int(std::min<Index>(n, 240));
    Matrix V(n, max_iter + 1);
    Vector alpha(max_iter), beta(max_iter);

    Vector v;
    if (start && start->size() == n && start->norm() > 0.0) {
        v = *start / start->norm();
    } else {
        std::mt19937_64 rng(0x1a2b3c4dULL);
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        v.resize(n);
        for (Index i = 0; i < n; ++i) v(i) = uni(rng);
        v.normalize();
    }
    V.col(0) = v;

    int k = 0;
    double theta = 0.0;
    Vector ritz_s;
    for (; k < max_iter; ++k) {
        Vector w = shift * V.col(k) - block_tridiagonal_matvec(M, offsets, V.col(k));
        if (k > 0) w -= beta(k - 1) * V.col(k - 1);
        alpha(k) = V.col(k).dot(w);
        w -= alpha(k) * V.col(k);
        // full reorthogonalization keeps the small basis numerically clean
        w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
        beta(k) = w.norm();

        if ((k >= 4 && k % 4 == 3) || beta(k) < 1e-14 * scale || k + 1 == max_iter) {
            Matrix T = Matrix::Zero(k + 1, k + 1);
            for (int j = 0; j <= k; ++j) {
                T(j, j) = alpha(j);
                if (j < k) T(j + 1, j) = T(j, j + 1) = beta(j);
            }
            Eigen::SelfAdjointEigenSolver<Matrix> es(T);
            theta = es.eigenvalues()(k);  // largest of shift*I - M
            ritz_s = es.eigenvectors().col(k);
            const double residual = std::abs(beta(k) * ritz_s(k));
            if (residual <= 1e-10 * scale || beta(k) < 1e-14 * scale) {
                Vector u = V.leftCols(k + 1) * ritz_s;
                u.normalize();
                return {shift - theta, u};
            }
        }
        if (beta(k) < 1e-14 * scale) break;
        V.col(k + 1) = w / beta(k);
    }

    // Lanczos did not converge; the dense path settles it.
    return min_eigenpair(M.assemble());
}

}  // namespace lipnn
