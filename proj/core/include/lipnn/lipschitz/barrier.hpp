#ifndef LIPNN_LIPSCHITZ_BARRIER_HPP
#define LIPNN_LIPSCHITZ_BARRIER_HPP

#include <vector>

#include "lipnn/lipschitz/cert_matrix.hpp"

namespace lipnn {

struct BarrierEval {
    double value = 0.0;                // -rho * logdet M
    std::vector<Matrix> grad_weights;  // same shapes as p.weights
    std::vector<Vector> grad_lambdas;  // same shapes as m.lambdas
};

/// Value and analytic gradients of the log-det barrier -rho*logdet M(p, m, t).
/// Gradients are read off the selected inverse alone: every parameter entry
/// appears only in a diagonal block 2*Lambda_i or a subdiagonal block
/// -Lambda_{i+1} W_i, so only the S and K blocks of M^{-1} are touched and
/// the full inverse is never formed. The gradient with respect to every bias
/// is identically zero (biases do not enter M). Throws InfeasiblePoint when
/// the blocked Cholesky fails.
BarrierEval barrier_loss_and_grads(const MlpParams& p, const Multipliers& m,
                                   LipschitzTarget t, double rho);

/// Dense twin: dense Cholesky of the assembled matrix plus a full inverse.
/// Same contract and results within roundoff; benchmark baseline.
BarrierEval barrier_loss_and_grads_dense(const MlpParams& p, const Multipliers& m,
                                         LipschitzTarget t, double rho);

}  // namespace lipnn

#endif
