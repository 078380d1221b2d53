#ifndef LIPNN_WGAN_WGAN_HPP
#define LIPNN_WGAN_WGAN_HPP

#include <span>
#include <string>
#include <vector>

#include "lipnn/lipschitz/step.hpp"
#include "lipnn/train/dataset.hpp"

namespace lipnn {

enum class GanMethod { Barrier, WeightClip, GradientPenalty };

GanMethod parse_gan_method(const std::string& text);
std::string gan_method_name(GanMethod method);

struct GanConfig {
    std::vector<Index> gen_dims = {2, 32, 32, 2};   // noise -> data space
    std::vector<Index> disc_dims = {2, 16, 16, 1};  // data space -> critic value
    int critic_steps = 5;
    GanMethod method = GanMethod::Barrier;
    double clip = 0.01;      // weight_clip bound c
    double penalty = 10.0;   // gradient_penalty weight mu
    int epochs = 30;
    int batch_size = 64;
    std::uint64_t seed = 1;
    double lipschitz_target = 1.0;  // barrier method
    MultiplierMode multiplier_mode = MultiplierMode::Bilinear;
    AdamConfig adam;  // both players; WGAN-style small learning rate
    double rho0 = 1e-3;
    double rho_decay = 0.9;
    int rho_period = 10;

    // The toy data distribution, also used for the mode-coverage report.
    int ring_modes = 8;
    double ring_radius = 1.0;
    double ring_sigma = 0.05;

    void validate() const;
};

struct GanEpochRow {
    int epoch = 0;
    double wasserstein = 0.0;  // mean f(data) - mean f(fakes)
    double disc_bound = 0.0;   // certified Lipschitz bound of the critic
};

struct GanMetrics {
    std::vector<GanEpochRow> epochs;
    double mode_coverage = 0.0;  // fraction of samples within 3 sigma of a mode
    bool always_feasible = true; // barrier method: feasibility after every step
    std::string samples_path;    // point-cloud snapshot, when one was written
    double total_seconds = 0.0;

    void write_csv(const std::string& path) const;
};

struct GanOutput {
    MlpParams generator;
    MlpParams discriminator;
    Multipliers disc_multipliers;
    GanMetrics metrics;
};

/// n draws from a mixture of `modes` Gaussians centered on a circle of the
/// given radius, mode k at angle 2*pi*k/modes.
Dataset sample_ring(int n, int modes, double radius, double sigma, std::uint64_t seed);

/// Empirical Wasserstein-1 estimate of the critic objective.
double wasserstein_estimate(const MlpParams& critic, std::span<const Vector> data_batch,
                            std::span<const Vector> fake_batch);

struct PenaltyEval {
    double value = 0.0;
    MlpGrads grads;
};

/// mu * (||grad_x f(xhat)|| - 1)^2 at one interpolate, with its exact
/// parameter gradient (reverse accumulation through the tangent forward
/// pass that produces grad_x f).
PenaltyEval gradient_penalty_at(const MlpParams& critic, const Vector& xhat, double mu);

/// Alternating WGAN training. Critic steps maximize the objective under the
/// selected constraint method (log-det barrier at L=1 via constrained_step,
/// hard weight clipping, or the gradient penalty on interpolates); every
/// critic_steps-th batch takes one generator step. Deterministic per seed.
GanOutput wgan_train(const GanConfig& config, const Dataset& data);

/// Writes generated samples as a CSV point cloud.
void write_samples_csv(const std::string& path, const std::vector<Vector>& samples);

}  // namespace lipnn

#endif
