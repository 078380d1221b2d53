#ifndef LIPNN_TRAIN_MODEL_IO_HPP
#define LIPNN_TRAIN_MODEL_IO_HPP

#include <string>

#include "lipnn/lipschitz/multipliers.hpp"
#include "lipnn/nn/mlp.hpp"

namespace lipnn {

struct ModelMeta {
    double lipschitz_target = 0.0;
    std::string mode = "nominal";
};

struct LoadedModel {
    MlpParams params;
    Multipliers multipliers;
    ModelMeta meta;
};

/// Versioned text format: dims, activation, row-major weights, biases,
/// multipliers, target and mode. Decimal serialization with 17 significant
/// digits makes the round trip exact. load_model throws VersionMismatch on a
/// wrong version tag and ParseError on damage.
void save_model(const std::string& path, const MlpParams& p, const Multipliers& m,
                const ModelMeta& meta);
LoadedModel load_model(const std::string& path);

}  // namespace lipnn

#endif
