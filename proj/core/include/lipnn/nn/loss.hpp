#ifndef LIPNN_NN_LOSS_HPP
#define LIPNN_NN_LOSS_HPP

#include <span>

#include "lipnn/nn/mlp.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

enum class LossKind {
    CrossEntropy,       // softmax output, integer class labels
    MeanSquaredError,   // vector targets
    WassersteinCritic,  // scalar output; target(0) = +1 for data, -1 for fakes
};

struct Sample {
    Vector input;
    Vector target;   // regression target, or the critic sign in target(0)
    int label = -1;  // class index for CrossEntropy
};

struct LossResult {
    double value = 0.0;
    MlpGrads grads;
};

/// Mean loss over the batch and its exact gradient by reverse accumulation.
LossResult loss_and_grad(const MlpParams& p, std::span<const Sample> batch, LossKind kind);

LossKind parse_loss(const std::string& text);
std::string loss_name(LossKind kind);

}  // namespace lipnn

#endif
