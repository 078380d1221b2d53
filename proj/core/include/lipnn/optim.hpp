#ifndef LIPNN_OPTIM_HPP
#define LIPNN_OPTIM_HPP

#include "lipnn/lipschitz/multipliers.hpp"
#include "lipnn/nn/mlp.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

/// First and second moments over one flattened parameter vector.
struct AdamState {
    Vector m;
    Vector v;
    long t = 0;

    void reset(Index n) {
        m = Vector::Zero(n);
        v = Vector::Zero(n);
        t = 0;
    }
};

/// One Adam update with bias correction; returns the updated parameters.
Vector adam_step(AdamState& state, const Vector& params, const Vector& grads,
                 const AdamConfig& cfg);

/// Flattened views used to drive the optimizer over (weights, biases) and
/// optionally the multipliers, in that fixed order.
Index flat_size(const MlpParams& p, bool with_multipliers);
Vector flatten(const MlpParams& p, const Multipliers* m = nullptr);
Vector flatten_grads(const MlpParams& p, const MlpGrads& g,
                     const std::vector<Vector>* lambda_grads = nullptr);
void unflatten(const Vector& x, MlpParams& p, Multipliers* m = nullptr);

}  // namespace lipnn

#endif
