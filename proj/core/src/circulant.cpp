#include "lipnn/conv/circulant.hpp"

#include "lipnn/errors.hpp"

namespace lipnn {

ConvFilter ConvFilter::padded(const Matrix& K, Index n, Index m) {
    if (K.rows() > n || K.cols() > m)
        throw ShapeMismatch("filter larger than the input it is padded to");
    ConvFilter f;
    f.input_rows = n;
    f.input_cols = m;
    f.kernel = Matrix::Zero(n, m);
    f.kernel.block(0, 0, K.rows(), K.cols()) = K;
    return f;
}

Matrix circulant(const Vector& row) {
    const Index m = row.size();
    if (m < 1) throw ShapeMismatch("circulant of an empty row");
    Matrix C(m, m);
    for (Index r = 0; r < m; ++r)
        for (Index j = 0; j < m; ++j) C(r, (j + r) % m) = row(j);
    return C;
}

Matrix doubly_block_circulant(const ConvFilter& f) {
    const Index n = f.input_rows;
    const Index m = f.input_cols;
    Matrix D(n * m, n * m);
    for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
            const Index src = ((j - i) % n + n) % n;
            D.block(i * m, j * m, m, m) = circulant(f.kernel.row(src).transpose());
        }
    }
    return D;
}

Matrix conv2d_circular(const Matrix& K, const Matrix& X) {
    const Index n = X.rows();
    const Index m = X.cols();
    const ConvFilter f = ConvFilter::padded(K, n, m);
    Matrix Y = Matrix::Zero(n, m);
    for (Index k = 0; k < n; ++k)
        for (Index l = 0; l < m; ++l) {
            double acc = 0.0;
            for (Index i = 0; i < n; ++i)
                for (Index j = 0; j < m; ++j)
                    acc += f.kernel(i, j) * X((k + i) % n, (l + j) % m);
            Y(k, l) = acc;
        }
    return Y;
}

Vector vec_row_major(const Matrix& X) {
    Vector v(X.size());
    Index off = 0;
    for (Index r = 0; r < X.rows(); ++r)
        for (Index c = 0; c < X.cols(); ++c) v(off++) = X(r, c);
    return v;
}

}  // namespace lipnn
