#include "lipnn/wgan/wgan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

#include "lipnn/certify/estimate.hpp"
#include "lipnn/errors.hpp"

namespace lipnn {

GanMethod parse_gan_method(const std::string& text) {
    if (text == "barrier") return GanMethod::Barrier;
    if (text == "clip" || text == "weight_clip" || text == "wc") return GanMethod::WeightClip;
    if (text == "gp" || text == "gradient_penalty") return GanMethod::GradientPenalty;
    throw ParseError("unknown wgan method '" + text + "'", 0);
}

std::string gan_method_name(GanMethod method) {
    switch (method) {
        case GanMethod::Barrier: return "barrier";
        case GanMethod::WeightClip: return "clip";
        case GanMethod::GradientPenalty: return "gp";
    }
    return "barrier";
}

void GanConfig::validate() const {
    if (gen_dims.size() < 3 || disc_dims.size() < 3)
        throw DimensionError("generator and discriminator need hidden layers");
    if (disc_dims.back() != 1) throw DimensionError("discriminator output must be scalar");
    if (gen_dims.back() != disc_dims.front())
        throw DimensionError("generator output and discriminator input differ");
    if (critic_steps < 1) throw DataError("critic_steps must be >= 1");
    if (!(clip > 0.0)) throw DataError("clip bound must be positive");
    if (penalty < 0.0) throw DataError("penalty weight must be >= 0");
    if (epochs < 1 || batch_size < 1) throw DataError("epochs and batch_size must be >= 1");
}

Dataset sample_ring(int n, int modes, double radius, double sigma, std::uint64_t seed) {
    if (modes < 1) throw DataError("sample_ring needs modes >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, modes - 1);
    std::normal_distribution<double> noise(0.0, sigma > 0.0 ? sigma : 1.0);

    Dataset data;
    data.inputs.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int k = pick(rng);
        const double angle = 2.0 * M_PI * double(k) / double(modes);
        Vector x(2);
        x(0) = radius * std::cos(angle);
        x(1) = radius * std::sin(angle);
        if (sigma > 0.0) {
            x(0) += noise(rng);
            x(1) += noise(rng);
        }
        data.inputs.push_back(std::move(x));
    }
    data.is_test.assign(data.size(), 0);
    return data;
}

double wasserstein_estimate(const MlpParams& critic, std::span<const Vector> data_batch,
                            std::span<const Vector> fake_batch) {
    if (data_batch.empty() || fake_batch.empty())
        throw DataError("wasserstein_estimate on an empty batch");
    double data_mean = 0.0, fake_mean = 0.0;
    for (const Vector& x : data_batch) data_mean += forward(critic, x)(0);
    for (const Vector& x : fake_batch) fake_mean += forward(critic, x)(0);
    return data_mean / double(data_batch.size()) - fake_mean / double(fake_batch.size());
}

namespace {

// Gradient with respect to the parameters of s(theta) = u^T grad_x f(x; theta)
// for a fixed direction u, by reverse accumulation through the
// tangent-carrying forward pass (v_dot = W w_dot, w_dot = phi'(v) . v_dot).
// This is the exact derivative the gradient penalty needs.
MlpGrads directional_input_grad_params(const MlpParams& p, const Vector& x, const Vector& u,
                                       MlpGrads grads) {
    const std::size_t layers = p.weights.size();
    const Activation& act = p.activation;

    std::vector<Vector> post{x}, post_dot{u};
    std::vector<Vector> pre, pre_dot;
    for (std::size_t i = 0; i + 1 < layers; ++i) {
        Vector v = p.weights[i] * post.back() + p.biases[i];
        Vector vd = p.weights[i] * post_dot.back();
        Vector w(v.size()), wd(v.size());
        for (Index j = 0; j < v.size(); ++j) {
            w(j) = act(v(j));
            wd(j) = act.derivative(v(j)) * vd(j);
        }
        pre.push_back(std::move(v));
        pre_dot.push_back(std::move(vd));
        post.push_back(std::move(w));
        post_dot.push_back(std::move(wd));
    }

    // Output layer: s = [W_l w_dot^l](0); seed the two cotangent chains.
    Vector vdbar = p.weights[layers - 1].row(0).transpose();  // d s / d w_dot^l
    grads.weights[layers - 1].row(0) += post_dot.back().transpose();
    Vector vbar = Vector::Zero(post.back().size());

    for (std::size_t i = layers - 1; i-- > 0;) {
        const Vector& v = pre[i];
        const Vector& vd = pre_dot[i];
        Vector vdotbar(v.size()), vplainbar(v.size());
        for (Index j = 0; j < v.size(); ++j) {
            const double d1 = act.derivative(v(j));
            const double d2 = act.second_derivative(v(j));
            vdotbar(j) = d1 * vdbar(j);
            vplainbar(j) = d2 * vd(j) * vdbar(j) + d1 * vbar(j);
        }
        grads.weights[i].noalias() += vdotbar * post_dot[i].transpose();
        grads.weights[i].noalias() += vplainbar * post[i].transpose();
        grads.biases[i] += vplainbar;
        if (i > 0) {
            vdbar = p.weights[i].transpose() * vdotbar;
            vbar = p.weights[i].transpose() * vplainbar;
        }
    }
    return grads;
}

// mu * mean over interpolates of (||grad_x f(x_hat)|| - 1)^2 and its exact
// parameter gradient.
PenaltyEval gradient_penalty(const MlpParams& critic, const std::vector<Vector>& real,
                             const std::vector<Vector>& fake, double mu,
                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    PenaltyEval res;
    res.grads = zero_grads(critic);
    const std::size_t n = std::min(real.size(), fake.size());
    if (n == 0 || mu == 0.0) return res;

    for (std::size_t i = 0; i < n; ++i) {
        const double tmix = uni(rng);
        const Vector xhat = tmix * real[i] + (1.0 - tmix) * fake[i];
        const PenaltyEval one = gradient_penalty_at(critic, xhat, mu / double(n));
        res.value += one.value;
        for (std::size_t j = 0; j < res.grads.weights.size(); ++j) {
            res.grads.weights[j] += one.grads.weights[j];
            res.grads.biases[j] += one.grads.biases[j];
        }
    }
    return res;
}

std::vector<Vector> sample_noise(Index dim, int count, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Vector> z;
    z.reserve(count);
    for (int i = 0; i < count; ++i) {
        Vector v(dim);
        for (Index j = 0; j < dim; ++j) v(j) = normal(rng);
        z.push_back(std::move(v));
    }
    return z;
}

}  // namespace

PenaltyEval gradient_penalty_at(const MlpParams& critic, const Vector& xhat, double mu) {
    PenaltyEval res;
    res.grads = zero_grads(critic);
    const Vector g = input_gradient(critic, xhat);
    const double norm = g.norm();
    res.value = mu * (norm - 1.0) * (norm - 1.0);
    if (mu != 0.0 && norm > 1e-12) {
        const Vector u = 2.0 * mu * (norm - 1.0) / norm * g;
        res.grads = directional_input_grad_params(critic, xhat, u, std::move(res.grads));
    }
    return res;
}

void GanMetrics::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "epoch,wasserstein,disc_bound\n";
    for (const auto& row : epochs)
        out << row.epoch << "," << num(row.wasserstein) << "," << num(row.disc_bound) << "\n";
    out << "# mode_coverage," << num(mode_coverage) << "\n";
    out << "# always_feasible," << (always_feasible ? 1 : 0) << "\n";
    if (!samples_path.empty()) out << "# samples," << samples_path << "\n";
}

void write_samples_csv(const std::string& path, const std::vector<Vector>& samples) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    if (samples.empty()) return;
    const Index d = samples.front().size();
    for (Index i = 0; i < d; ++i) out << "x" << (i + 1) << (i + 1 < d ? "," : "\n");
    char buf[32];
    for (const Vector& s : samples)
        for (Index i = 0; i < d; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g", s(i));
            out << buf << (i + 1 < d ? "," : "\n");
        }
}

GanOutput wgan_train(const GanConfig& config, const Dataset& data) {
    config.validate();
    if (data.size() == 0) throw DataError("empty dataset");
    if (data.input_dim() != 2)
        throw DimensionError("wgan_train expects 2-dimensional data");
    if (data.input_dim() != config.disc_dims.front())
        throw DimensionError("data dimension does not match the discriminator input");

    const LipschitzTarget target{config.lipschitz_target};
    std::mt19937_64 rng(config.seed);

    MlpParams gen = glorot_init(config.gen_dims, {ActivationKind::Relu}, config.seed);
    MlpParams disc =
        glorot_init(config.disc_dims, {ActivationKind::LeakyRelu, 0.2}, config.seed ^ 0xabcdULL);
    Multipliers mult = Multipliers::constant(disc, 1.0);
    if (config.method == GanMethod::Barrier)
        disc = feasible_init(disc, mult, target);

    AdamState gen_state, disc_state;
    StepConfig step_cfg;
    step_cfg.adam = config.adam;
    step_cfg.mode = config.multiplier_mode;

    GanMetrics metrics;
    double rho = config.rho0;
    const auto t_start = std::chrono::steady_clock::now();

    std::vector<std::size_t> order(data.size());
    std::iota(order.begin(), order.end(), 0);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        int batches_done = 0;

        for (std::size_t begin = 0; begin + 1 < order.size();
             begin += config.batch_size, ++batches_done) {
            const std::size_t end = std::min(order.size(), begin + config.batch_size);
            const int b = int(end - begin);

            std::vector<Vector> real;
            real.reserve(b);
            for (std::size_t i = begin; i < end; ++i) real.push_back(data.inputs[order[i]]);
            const auto z = sample_noise(config.gen_dims.front(), b, rng);
            std::vector<Vector> fake;
            fake.reserve(b);
            for (const Vector& zi : z) fake.push_back(forward(gen, zi));

            // -- critic step: ascend mean f(real) - mean f(fake)
            std::vector<Sample> batch;
            batch.reserve(2 * b);
            for (const Vector& x : real)
                batch.push_back({x, Vector::Constant(1, 1.0), -1});
            for (const Vector& x : fake)
                batch.push_back({x, Vector::Constant(1, -1.0), -1});
            LossResult critic = loss_and_grad(disc, batch, LossKind::WassersteinCritic);

            switch (config.method) {
                case GanMethod::Barrier: {
                    const BarrierEval be = barrier_loss_and_grads(disc, mult, target, rho);
                    StepResult step = constrained_step(disc, mult, target, critic.grads, be,
                                                       disc_state, step_cfg);
                    disc = std::move(step.params);
                    mult = std::move(step.multipliers);
                    if (!is_feasible(disc, mult, target, step_cfg.margin))
                        metrics.always_feasible = false;
                    break;
                }
                case GanMethod::WeightClip: {
                    const Vector x1 = adam_step(disc_state, flatten(disc),
                                                flatten_grads(disc, critic.grads), config.adam);
                    unflatten(x1, disc);
                    for (auto& W : disc.weights)
                        W = W.cwiseMax(-config.clip).cwiseMin(config.clip);
                    break;
                }
                case GanMethod::GradientPenalty: {
                    const PenaltyEval pen =
                        gradient_penalty(disc, real, fake, config.penalty, rng);
                    MlpGrads combined = critic.grads;
                    for (std::size_t i = 0; i < combined.weights.size(); ++i) {
                        combined.weights[i] += pen.grads.weights[i];
                        combined.biases[i] += pen.grads.biases[i];
                    }
                    const Vector x1 = adam_step(disc_state, flatten(disc),
                                                flatten_grads(disc, combined), config.adam);
                    unflatten(x1, disc);
                    break;
                }
            }

            // -- generator step every critic_steps batches: descend -mean f(g(z))
            if ((batches_done + 1) % config.critic_steps == 0) {
                const auto zg = sample_noise(config.gen_dims.front(), config.batch_size, rng);
                MlpGrads ggrads = zero_grads(gen);
                for (const Vector& zi : zg) {
                    ForwardTrace tr = forward_trace(gen, zi);
                    const Vector dx =
                        -input_gradient(disc, tr.output()) / double(zg.size());
                    backward(gen, tr, dx, ggrads);
                }
                const Vector g1 =
                    adam_step(gen_state, flatten(gen), flatten_grads(gen, ggrads), config.adam);
                unflatten(g1, gen);
            }
        }

        // epoch metrics: objective estimate plus the certified critic bound
        const auto z_eval = sample_noise(config.gen_dims.front(), 256, rng);
        std::vector<Vector> fake_eval;
        fake_eval.reserve(z_eval.size());
        for (const Vector& zi : z_eval) fake_eval.push_back(forward(gen, zi));

        GanEpochRow row;
        row.epoch = epoch;
        row.wasserstein = wasserstein_estimate(disc, data.inputs, fake_eval);
        EstimateOptions opts;
        opts.mode = CertMode::FullDiag;
        opts.tol = 1e-3;
        if (config.method == GanMethod::Barrier) opts.warm_start = &mult;
        row.disc_bound = estimate_lipschitz_detailed(disc, opts).bound;
        if (config.method == GanMethod::Barrier &&
            is_feasible(disc, mult, target, 0.0))
            row.disc_bound = std::min(row.disc_bound, target.L);
        metrics.epochs.push_back(row);

        if ((epoch + 1) % config.rho_period == 0) rho *= config.rho_decay;
    }

    // mode coverage of the trained generator against the ring the data came from
    const auto z_final = sample_noise(config.gen_dims.front(), 500, rng);
    int covered = 0;
    for (const Vector& zi : z_final) {
        const Vector x = forward(gen, zi);
        for (int k = 0; k < config.ring_modes; ++k) {
            const double angle = 2.0 * M_PI * double(k) / double(config.ring_modes);
            Vector center(2);
            center << config.ring_radius * std::cos(angle),
                config.ring_radius * std::sin(angle);
            if ((x - center).norm() <= 3.0 * config.ring_sigma) {
                ++covered;
                break;
            }
        }
    }
    metrics.mode_coverage = double(covered) / double(z_final.size());
    metrics.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    return {std::move(gen), std::move(disc), std::move(mult), std::move(metrics)};
}

}  // namespace lipnn
