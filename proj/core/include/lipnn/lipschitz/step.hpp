#ifndef LIPNN_LIPSCHITZ_STEP_HPP
#define LIPNN_LIPSCHITZ_STEP_HPP

#include "lipnn/lipschitz/barrier.hpp"
#include "lipnn/nn/loss.hpp"
#include "lipnn/optim.hpp"

namespace lipnn {

struct StepConfig {
    AdamConfig adam;
    MultiplierMode mode = MultiplierMode::Bilinear;
    double margin = kTrainMargin;
    int max_backoff = 20;
    double lambda_floor = kLambdaFloor;
};

struct StepResult {
    MlpParams params;
    Multipliers multipliers;
    bool accepted = false;
};

/// One feasibility-preserving optimizer step. Proposes an Adam update on the
/// weights and biases (and on the multipliers in bilinear mode, projected to
/// the floor); if the proposal leaves the feasible set, the applied delta is
/// halved up to max_backoff times. A still-infeasible proposal is rejected
/// and the original point returned with accepted=false. Linear mode never
/// changes the multipliers.
StepResult constrained_step(const MlpParams& p, const Multipliers& m, LipschitzTarget t,
                            const MlpGrads& task_grads, const BarrierEval& barrier,
                            AdamState& state, const StepConfig& cfg);

}  // namespace lipnn

#endif
