#ifndef LIPNN_TRAIN_TRAINER_HPP
#define LIPNN_TRAIN_TRAINER_HPP

#include <string>
#include <vector>

#include "lipnn/lipschitz/step.hpp"
#include "lipnn/nn/loss.hpp"
#include "lipnn/train/dataset.hpp"

namespace lipnn {

enum class TrainMode { Nominal, BarrierLinear, BarrierBilinear };

TrainMode parse_train_mode(const std::string& text);
std::string train_mode_name(TrainMode mode);

struct TrainConfig {
    std::vector<Index> dims;
    Activation activation;
    LossKind loss = LossKind::CrossEntropy;
    TrainMode mode = TrainMode::Nominal;
    double lipschitz_target = 10.0;

    double rho0 = 0.0;  // <= 0 picks 1e-3 * initial task loss
    double rho_decay = 0.8;
    int rho_period = 10;  // epochs between decays

    AdamConfig adam;
    int epochs = 100;
    int batch_size = 32;
    std::uint64_t seed = 1;
    double margin = kTrainMargin;
    double lambda_init = 1.0;
    double test_fraction = 0.25;  // applied when the dataset has no test tags

    void validate() const;
    /// Flat key=value text file; '#' starts a comment. Unknown keys throw.
    static TrainConfig from_file(const std::string& path);
    void set(const std::string& key, const std::string& value);
};

struct EpochRow {
    int epoch = 0;
    double task_loss = 0.0;
    double barrier_value = 0.0;
    double rho = 0.0;
    double accuracy = 0.0;
    bool feasible = true;
    double seconds = 0.0;  // not serialized; repeated runs must be byte-identical
};

struct RunMetrics {
    std::vector<EpochRow> epochs;
    double rho0_resolved = 0.0;
    double final_certified_full = -1.0;
    double final_certified_scalar = -1.0;
    double final_certified_split = -1.0;
    double test_accuracy = -1.0;
    double total_seconds = 0.0;

    /// Deterministic columns only:
    /// epoch,task_loss,barrier_value,rho,accuracy,feasible plus `# final ...`
    /// footer lines.
    void write_csv(const std::string& path) const;
};

struct TrainOutput {
    MlpParams params;
    Multipliers multipliers;
    RunMetrics metrics;
};

/// Full training run. Nominal mode minimizes the task loss alone; the
/// barrier modes minimize loss - rho*logdet M through feasibility-preserving
/// steps, with rho decaying on the configured schedule. Deterministic for a
/// fixed seed.
TrainOutput train(const TrainConfig& config, const Dataset& data);

/// Fraction of correctly argmax-classified samples at the given indices.
double accuracy(const MlpParams& p, const Dataset& data,
                const std::vector<std::size_t>& indices);

}  // namespace lipnn

#endif
