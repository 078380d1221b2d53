#ifndef LIPNN_LINALG_CHOLESKY_HPP
#define LIPNN_LINALG_CHOLESKY_HPP

#include "lipnn/linalg/block_tridiagonal.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

/// A pivot d is accepted only if d > margin * max(diag). The strict
/// positive-definiteness of the theory needs a numerical floor.
inline constexpr double kDefaultPivotMargin = 1e-12;

/// Lower-triangular L with L L^T = A. A must be square and symmetric within
/// 1e-10 relative. Throws NotPositiveDefinite with the failing pivot index.
Matrix dense_cholesky(const Matrix& A, double margin = kDefaultPivotMargin);

/// Blocked factorization of a symmetric block-tridiagonal matrix; a sequence
/// of per-block Cholesky factorizations and triangular solves. The assembled
/// matrix is never formed. Throws NotPositiveDefinite with the failing block
/// index. The pivot margin is relative to the largest diagonal entry of the
/// whole matrix.
BlockCholesky block_cholesky(const BlockTridiagonalSymmetric& M,
                             double margin = kDefaultPivotMargin);

/// Block-tridiagonal part of M^{-1} from the blocked factor, running backward
/// from the last block. The full inverse is never formed.
SelectedInverse selected_inverse(const BlockCholesky& c);

/// Dense twin of selected_inverse: assembles M, inverts it fully, and
/// restricts to the block-tridiagonal pattern. Test oracle and benchmark
/// baseline.
SelectedInverse selected_inverse_dense(const BlockTridiagonalSymmetric& M,
                                       double margin = kDefaultPivotMargin);

/// log det of the factored matrix: 2 * sum(log diag of the factor).
double logdet(const BlockCholesky& c);
double logdet(const Matrix& dense_factor);

}  // namespace lipnn

#endif
