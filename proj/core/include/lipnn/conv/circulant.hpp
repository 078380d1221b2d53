#ifndef LIPNN_CONV_CIRCULANT_HPP
#define LIPNN_CONV_CIRCULANT_HPP

#include "lipnn/types.hpp"

namespace lipnn {

/// Single-channel convolution filter, zero-padded to the input size so the
/// circulant representation below is square.
struct ConvFilter {
    Matrix kernel;  // input_rows x input_cols after padding
    Index input_rows = 0;
    Index input_cols = 0;

    static ConvFilter padded(const Matrix& K, Index n, Index m);
};

/// m x m circulant matrix whose row r is the input row cyclically
/// right-shifted by r.
Matrix circulant(const Vector& row);

/// The doubly block circulant matrix D with block (i, j) = circ(K_{(j-i) mod n, :}).
/// Row-major vectorization: vec(conv2d_circular(K, X)) = D * vec(X).
Matrix doubly_block_circulant(const ConvFilter& f);

/// Circular 2D convolution: Y(k,l) = sum_{i,j} K(i,j) X((k+i) mod n, (l+j) mod m).
Matrix conv2d_circular(const Matrix& K, const Matrix& X);

/// Row-major vectorization, the order fixed by the circulant layout.
Vector vec_row_major(const Matrix& X);

}  // namespace lipnn

#endif
