#include "lipnn/lipschitz/barrier.hpp"

#include "lipnn/errors.hpp"
#include "lipnn/linalg/cholesky.hpp"

namespace lipnn {

namespace {

// Gradients of -rho*logdet from the block-tridiagonal part of the inverse.
//
// For a symmetric perturbation pair (dB at block (g+1,g), dB^T mirrored),
// d logdet = 2 <K_g, dB>; for a diagonal perturbation d logdet = <S_g, dD>.
// With B_i = -Lambda_{i+1} W_i (i < l), B_l = -W_l and D_i = 2 Lambda_i:
//   d logdet / d W_i      = -2 Lambda_{i+1} K_i        (i = 0..l-1)
//   d logdet / d W_l      = -2 K_l
//   d logdet / d lambda^i_j = 2 (S_i)_jj - 2 sum_a W_{i-1}(j,a) K_{i-1}(j,a).
BarrierEval grads_from_selected(const MlpParams& p, const Multipliers& m, double rho,
                                double logdet_value, const SelectedInverse& inv) {
    const Index l = p.num_hidden();
    BarrierEval out;
    out.value = -rho * logdet_value;
    out.grad_weights.reserve(l + 1);
    out.grad_lambdas.reserve(l);

    for (Index i = 0; i < l; ++i)
        out.grad_weights.emplace_back(2.0 * rho * (m.lambdas[i].asDiagonal() * inv.K[i]));
    out.grad_weights.emplace_back(2.0 * rho * inv.K[l]);

    for (Index i = 1; i <= l; ++i) {
        const Matrix& W = p.weights[i - 1];
        const Matrix& K = inv.K[i - 1];
        Vector g(p.dims[i]);
        for (Index j = 0; j < g.size(); ++j)
            g(j) = -2.0 * rho * (inv.S[i](j, j) - W.row(j).dot(K.row(j)));
        out.grad_lambdas.emplace_back(std::move(g));
    }
    return out;
}

}  // namespace

BarrierEval barrier_loss_and_grads(const MlpParams& p, const Multipliers& m,
                                   LipschitzTarget t, double rho) {
    const BlockTridiagonalSymmetric M = assemble_cert_matrix(p, m, t);
    BlockCholesky c;
    try {
        c = block_cholesky(M);
    } catch (const NotPositiveDefinite& e) {
        throw InfeasiblePoint(std::string("barrier evaluated at an infeasible point: ") +
                              e.what());
    }
    return grads_from_selected(p, m, rho, logdet(c), selected_inverse(c));
}

BarrierEval barrier_loss_and_grads_dense(const MlpParams& p, const Multipliers& m,
                                         LipschitzTarget t, double rho) {
    const BlockTridiagonalSymmetric M = assemble_cert_matrix(p, m, t);
    const Matrix full = M.assemble();
    Matrix L;
    try {
        L = dense_cholesky(full);
    } catch (const NotPositiveDefinite& e) {
        throw InfeasiblePoint(std::string("barrier evaluated at an infeasible point: ") +
                              e.what());
    }
    const double ld = logdet(L);

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
    return grads_from_selected(p, m, rho, ld, inv);
}

}  // namespace lipnn
