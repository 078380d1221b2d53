#ifndef LIPNN_LINALG_BLOCK_TRIDIAGONAL_HPP
#define LIPNN_LINALG_BLOCK_TRIDIAGONAL_HPP

#include <vector>

#include "lipnn/types.hpp"

namespace lipnn {

/// Symmetric block-tridiagonal matrix, stored as its diagonal blocks and the
/// subdiagonal blocks below them. Block i of the subdiagonal sits at block
/// position (i+1, i); the mirrored transpose is implied.
struct BlockTridiagonalSymmetric {
    std::vector<Matrix> diag;  // diag[i] is m_i x m_i, symmetric
    std::vector<Matrix> sub;   // sub[i] is m_{i+1} x m_i

    std::size_t num_blocks() const { return diag.size(); }
    Index dim() const;
    std::vector<Index> block_sizes() const;

    /// Structural check: block counts, shapes, and symmetry of the diagonal
    /// blocks (1e-12 relative). Throws ShapeMismatch.
    void validate() const;

    Matrix assemble() const;
};

/// Cholesky factor of a BlockTridiagonalSymmetric: L has lower-triangular
/// diagonal blocks D_i and dense subdiagonal blocks R_i at (i+1, i).
struct BlockCholesky {
    std::vector<Matrix> D;
    std::vector<Matrix> R;

    std::size_t num_blocks() const { return D.size(); }
    Matrix assemble() const;
};

/// Block-tridiagonal restriction of the inverse: diagonal blocks S_i and
/// subdiagonal blocks K_i at (i+1, i). The remaining blocks of the inverse
/// are never computed.
struct SelectedInverse {
    std::vector<Matrix> S;
    std::vector<Matrix> K;
};

}  // namespace lipnn

#endif
