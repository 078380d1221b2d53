#include "lipnn/lipschitz/cert_matrix.hpp"

#include <cmath>
#include <string>

#include "lipnn/errors.hpp"
#include "lipnn/linalg/cholesky.hpp"

namespace lipnn {

Multipliers Multipliers::constant(const MlpParams& p, double value) {
    Multipliers m;
    for (Index i = 1; i + 1 < static_cast<Index>(p.dims.size()); ++i)
        m.lambdas.emplace_back(Vector::Constant(p.dims[i], value));
    return m;
}

void Multipliers::validate(const MlpParams& p) const {
    const std::size_t l = p.dims.size() - 2;
    if (lambdas.size() != l)
        throw ShapeMismatch("expected " + std::to_string(l) + " multiplier vectors, got " +
                            std::to_string(lambdas.size()));
    for (std::size_t i = 0; i < l; ++i)
        if (lambdas[i].size() != p.dims[i + 1])
            throw ShapeMismatch("multiplier " + std::to_string(i + 1) + " has length " +
                                std::to_string(lambdas[i].size()) + ", layer width is " +
                                std::to_string(p.dims[i + 1]));
}

void Multipliers::clamp_to_floor(double floor) {
    for (auto& l : lambdas) l = l.cwiseMax(floor);
}

BlockTridiagonalSymmetric assemble_cert_matrix(const MlpParams& p, const Multipliers& m,
                                               LipschitzTarget t) {
    p.validate();
    m.validate(p);
    const Index l = p.num_hidden();

    BlockTridiagonalSymmetric M;
    M.diag.reserve(l + 2);
    M.sub.reserve(l + 1);

    M.diag.emplace_back(t.L * t.L * Matrix::Identity(p.dims[0], p.dims[0]));
    for (Index i = 0; i < l; ++i) {
        M.diag.emplace_back(Matrix((2.0 * m.lambdas[i]).asDiagonal()));
        M.sub.emplace_back(-(m.lambdas[i].asDiagonal() * p.weights[i]));
    }
    M.diag.emplace_back(Matrix::Identity(p.dims[l + 1], p.dims[l + 1]));
    M.sub.emplace_back(-p.weights[l]);
    return M;
}

bool is_feasible(const MlpParams& p, const Multipliers& m, LipschitzTarget t, double margin) {
    try {
        block_cholesky(assemble_cert_matrix(p, m, t), margin);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

MlpParams feasible_init(const MlpParams& p, const Multipliers& m, LipschitzTarget t,
                        double margin) {
    if (is_feasible(p, m, t, margin)) return p;

    constexpr double kShrink = 0.8;
    constexpr int kMaxSteps = 200;
    double scale = 1.0;
    for (int k = 1; k <= kMaxSteps; ++k) {
        scale *= kShrink;
        MlpParams q = p;
        for (auto& W : q.weights) W *= scale;
        if (is_feasible(q, m, t, margin)) return q;
    }
    throw InitFailure("no feasible scaling found in " + std::to_string(kMaxSteps) + " steps");
}

}  // namespace lipnn
