#ifndef LIPNN_LINALG_EIGS_HPP
#define LIPNN_LINALG_EIGS_HPP

#include <utility>

#include "lipnn/linalg/block_tridiagonal.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

struct SpectralNormResult {
    double value = 0.0;
    bool converged = true;
    operator double() const { return value; }
};

/// Largest singular value via power iteration on W^T W, started from a fixed
/// seeded pseudo-random vector. Stops at relative tolerance `tol` or after
/// 10*max(rows,cols)+100 iterations, in which case `converged` is false and
/// `value` holds the best estimate.
SpectralNormResult spectral_norm(const Matrix& W, double tol = 1e-10);

/// Smallest eigenvalue of a symmetric matrix (dense eigensolve).
double min_eigenvalue(const Matrix& A);

/// Smallest eigenvalue and a unit eigenvector for it.
std::pair<double, Vector> min_eigenpair(const Matrix& A);

/// Smallest eigenpair of a symmetric block-tridiagonal matrix by shifted
/// Lanczos iteration with blockwise products; the matrix is never assembled
/// unless the iteration fails to converge and the dense path takes over.
/// An optional start vector (e.g. the previous eigenvector) speeds up
/// repeated calls on nearby matrices.
std::pair<double, Vector> min_eigenpair(const BlockTridiagonalSymmetric& M,
                                        const Vector* start = nullptr);

}  // namespace lipnn

#endif
