#ifndef LIPNN_LIPSCHITZ_CERT_MATRIX_HPP
#define LIPNN_LIPSCHITZ_CERT_MATRIX_HPP

#include "lipnn/linalg/block_tridiagonal.hpp"
#include "lipnn/lipschitz/multipliers.hpp"
#include "lipnn/nn/mlp.hpp"

namespace lipnn {

/// Feasibility margin used while training; stricter than certification slack
/// so every accepted iterate also certifies.
inline constexpr double kTrainMargin = 1e-9;

/// The L-Lipschitz certificate matrix: block sizes (n_0,...,n_{l+1}),
/// diagonal blocks (L^2 I, 2 Lambda_1, ..., 2 Lambda_l, I), subdiagonal
/// blocks (-Lambda_1 W_0, ..., -Lambda_l W_{l-1}, -W_l). Biases do not enter.
BlockTridiagonalSymmetric assemble_cert_matrix(const MlpParams& p, const Multipliers& m,
                                               LipschitzTarget t);

/// True iff the blocked Cholesky succeeds with every pivot above
/// margin * max(diag M). Infeasibility is a false return, not an error.
bool is_feasible(const MlpParams& p, const Multipliers& m, LipschitzTarget t, double margin);

/// Returns p unchanged when already feasible; otherwise scales all weights by
/// 0.8^k for the smallest k that makes the certificate feasible. Biases are
/// untouched. Throws InitFailure past 200 shrink steps.
MlpParams feasible_init(const MlpParams& p, const Multipliers& m, LipschitzTarget t,
                        double margin = kTrainMargin);

}  // namespace lipnn

#endif
