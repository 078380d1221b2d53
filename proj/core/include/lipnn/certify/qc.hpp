#ifndef LIPNN_CERTIFY_QC_HPP
#define LIPNN_CERTIFY_QC_HPP

#include "lipnn/lipschitz/multipliers.hpp"
#include "lipnn/nn/mlp.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

/// Incremental quadratic constraint on (input difference, output difference),
///   [dx; df]^T [[Q, S], [S^T, R]] [dx; df] >= 0,
/// together with the slope bounds of the activations. Q = L^2 I, R = -I,
/// S = 0 describes L-Lipschitz continuity.
struct QcSpec {
    Matrix Q;  // n_0 x n_0, symmetric
    Matrix S;  // n_0 x n_{l+1}
    Matrix R;  // n_{l+1} x n_{l+1}, symmetric
    double slope_lo = 0.0;
    double slope_hi = 1.0;

    static QcSpec lipschitz(Index n_in, Index n_out, double L,
                            std::pair<double, double> slopes = {0.0, 1.0});
};

enum class CertMode { FullDiag, ScalarLambda, Split };

struct CertResult {
    bool certified = false;
    Multipliers multipliers_used;
    double min_eig = 0.0;
    CertMode mode = CertMode::FullDiag;
};

/// The certification matrix of the general quadratic-constraint certificate:
///   T_f^T [[Q,S],[S^T,R]] T_f + T_NN^T M_slope T_NN,
/// a dense symmetric matrix of dimension n_0 + n_1 + ... + n_l. Positive
/// semidefiniteness for some nonnegative diagonal multiplier proves the QC.
Matrix assemble_qc_matrix(const MlpParams& p, const QcSpec& qc, const Multipliers& m);

/// certified iff min_eig(assemble_qc_matrix) >= -slack.
CertResult check_qc(const MlpParams& p, const QcSpec& qc, const Multipliers& m,
                    double slack);

}  // namespace lipnn

#endif
