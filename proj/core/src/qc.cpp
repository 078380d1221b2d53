#include "lipnn/certify/qc.hpp"

#include "lipnn/errors.hpp"
#include "lipnn/linalg/eigs.hpp"

namespace lipnn {

QcSpec QcSpec::lipschitz(Index n_in, Index n_out, double L,
                         std::pair<double, double> slopes) {
    QcSpec qc;
    qc.Q = L * L * Matrix::Identity(n_in, n_in);
    qc.S = Matrix::Zero(n_in, n_out);
    qc.R = -Matrix::Identity(n_out, n_out);
    qc.slope_lo = slopes.first;
    qc.slope_hi = slopes.second;
    return qc;
}

Matrix assemble_qc_matrix(const MlpParams& p, const QcSpec& qc, const Multipliers& m) {
    p.validate();
    m.validate(p);
    const Index l = p.num_hidden();
    const Index n0 = p.dims.front();
    const Index nout = p.dims.back();
    Index n = 0;  // total hidden width
    for (Index i = 1; i <= l; ++i) n += p.dims[i];

    if (qc.Q.rows() != n0 || qc.Q.cols() != n0 || qc.R.rows() != nout ||
        qc.R.cols() != nout || qc.S.rows() != n0 || qc.S.cols() != nout)
        throw ShapeMismatch("QC matrices do not match the network dimensions");

    // T_f: (x, w) -> (x, f); the last weight acts on the last hidden block.
    Matrix Tf = Matrix::Zero(n0 + nout, n0 + n);
    Tf.block(0, 0, n0, n0).setIdentity();
    Tf.block(n0, n0 + n - p.dims[l], nout, p.dims[l]) = p.weights[l];

    // T_NN: (x, w) -> (v, w) with v^1 = W_0 x, v^{i+1} = W_i w^i.
    Matrix Tnn = Matrix::Zero(2 * n, n0 + n);
    Index row = 0;
    Index col = n0;
    Tnn.block(0, 0, p.dims[1], n0) = p.weights[0];
    row += p.dims[1];
    for (Index i = 1; i < l; ++i) {
        Tnn.block(row, col, p.dims[i + 1], p.dims[i]) = p.weights[i];
        row += p.dims[i + 1];
        col += p.dims[i];
    }
    Tnn.block(n, n0, n, n).setIdentity();

    Vector lam(n);
    Index off = 0;
    for (const auto& li : m.lambdas) {
        lam.segment(off, li.size()) = li;
        off += li.size();
    }

    const double a = qc.slope_lo;
    const double b = qc.slope_hi;
    Matrix Mslope(2 * n, 2 * n);
    Mslope.setZero();
    Mslope.block(0, 0, n, n) = Matrix((2.0 * a * b * lam).asDiagonal());
    Mslope.block(0, n, n, n) = Matrix((-(a + b) * lam).asDiagonal());
    Mslope.block(n, 0, n, n) = Mslope.block(0, n, n, n);
    Mslope.block(n, n, n, n) = Matrix((2.0 * lam).asDiagonal());

    Matrix qblk(n0 + nout, n0 + nout);
    qblk.block(0, 0, n0, n0) = qc.Q;
    qblk.block(0, n0, n0, nout) = qc.S;
    qblk.block(n0, 0, nout, n0) = qc.S.transpose();
    qblk.block(n0, n0, nout, nout) = qc.R;

    Matrix out = Tf.transpose() * qblk * Tf + Tnn.transpose() * Mslope * Tnn;
    return 0.5 * (out + out.transpose());
}

CertResult check_qc(const MlpParams& p, const QcSpec& qc, const Multipliers& m,
                    double slack) {
    CertResult res;
    res.multipliers_used = m;
    res.min_eig = min_eigenvalue(assemble_qc_matrix(p, qc, m));
    res.certified = res.min_eig >= -slack;
    return res;
}

}  // namespace lipnn
