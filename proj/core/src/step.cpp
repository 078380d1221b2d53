#include "lipnn/lipschitz/step.hpp"

namespace lipnn {

StepResult constrained_step(const MlpParams& p, const Multipliers& m, LipschitzTarget t,
                            const MlpGrads& task_grads, const BarrierEval& barrier,
                            AdamState& state, const StepConfig& cfg) {
    const bool bilinear = cfg.mode == MultiplierMode::Bilinear;

    MlpGrads combined = task_grads;
    for (std::size_t i = 0; i < combined.weights.size(); ++i)
        combined.weights[i] += barrier.grad_weights[i];

    const Vector x0 = flatten(p, bilinear ? &m : nullptr);
    const Vector g = flatten_grads(p, combined, bilinear ? &barrier.grad_lambdas : nullptr);
    const Vector x1 = adam_step(state, x0, g, cfg.adam);
    const Vector delta = x1 - x0;

    double scale = 1.0;
    for (int attempt = 0; attempt <= cfg.max_backoff; ++attempt) {
        MlpParams q = p;
        Multipliers mm = m;
        unflatten(x0 + scale * delta, q, bilinear ? &mm : nullptr);
        if (bilinear) mm.clamp_to_floor(cfg.lambda_floor);
        if (is_feasible(q, mm, t, cfg.margin))
            return {std::move(q), std::move(mm), true};
        scale *= 0.5;
    }
    return {p, m, false};
}

}  // namespace lipnn
