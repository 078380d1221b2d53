#include "lipnn/linalg/block_tridiagonal.hpp"

#include <string>

#include "lipnn/errors.hpp"

namespace lipnn {

Index BlockTridiagonalSymmetric::dim() const {
    Index n = 0;
    for (const auto& d : diag) n += d.rows();
    return n;
}

std::vector<Index> BlockTridiagonalSymmetric::block_sizes() const {
    std::vector<Index> sizes;
    sizes.reserve(diag.size());
    for (const auto& d : diag) sizes.push_back(d.rows());
    return sizes;
}

void BlockTridiagonalSymmetric::validate() const {
    if (diag.empty())
        throw ShapeMismatch("block tridiagonal matrix has no diagonal blocks");
    if (sub.size() + 1 != diag.size())
        throw ShapeMismatch("expected " + std::to_string(diag.size() - 1) +
                            " subdiagonal blocks, got " + std::to_string(sub.size()));
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const Matrix& d = diag[i];
        if (d.rows() != d.cols())
            throw ShapeMismatch("diagonal block " + std::to_string(i) + " is not square");
        const double scale = d.cwiseAbs().maxCoeff();
        if ((d - d.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(scale, 1e-300))
            throw ShapeMismatch("diagonal block " + std::to_string(i) + " is not symmetric");
    }
    for (std::size_t i = 0; i < sub.size(); ++i) {
        if (sub[i].rows() != diag[i + 1].rows() || sub[i].cols() != diag[i].rows())
            throw ShapeMismatch("subdiagonal block " + std::to_string(i) + " has shape " +
                                std::to_string(sub[i].rows()) + "x" + std::to_string(sub[i].cols()));
    }
}

Matrix BlockTridiagonalSymmetric::assemble() const {
    validate();
    const Index n = dim();
    Matrix full = Matrix::Zero(n, n);
    Index off = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        const Index m = diag[i].rows();
        full.block(off, off, m, m) = diag[i];
        if (i + 1 < diag.size()) {
            const Index m_next = diag[i + 1].rows();
            full.block(off + m, off, m_next, m) = sub[i];
            full.block(off, off + m, m, m_next) = sub[i].transpose();
        }
        off += m;
    }
    return full;
}

Matrix BlockCholesky::assemble() const {
    Index n = 0;
    for (const auto& d : D) n += d.rows();
    Matrix full = Matrix::Zero(n, n);
    Index off = 0;
    for (std::size_t i = 0; i < D.size(); ++i) {
        const Index m = D[i].rows();
        full.block(off, off, m, m) = D[i];
        if (i + 1 < D.size())
            full.block(off + m, off, D[i + 1].rows(), m) = R[i];
        off += m;
    }
    return full;
}

}  // namespace lipnn
