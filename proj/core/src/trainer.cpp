#include "lipnn/train/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include "lipnn/certify/estimate.hpp"
#include "lipnn/errors.hpp"

namespace lipnn {

TrainMode parse_train_mode(const std::string& text) {
    if (text == "nominal") return TrainMode::Nominal;
    if (text == "barrier-linear" || text == "barrier_linear") return TrainMode::BarrierLinear;
    if (text == "barrier-bilinear" || text == "barrier_bilinear")
        return TrainMode::BarrierBilinear;
    throw ParseError("unknown training mode '" + text + "'", 0);
}

std::string train_mode_name(TrainMode mode) {
    switch (mode) {
        case TrainMode::Nominal: return "nominal";
        case TrainMode::BarrierLinear: return "barrier-linear";
        case TrainMode::BarrierBilinear: return "barrier-bilinear";
    }
    return "nominal";
}

void TrainConfig::validate() const {
    if (dims.size() < 3) throw DimensionError("config needs dims with at least one hidden layer");
    if (!(rho_decay > 0.0 && rho_decay <= 1.0)) throw DataError("rho_decay must lie in (0,1]");
    if (rho_period < 1) throw DataError("rho_period must be >= 1");
    if (!(adam.lr > 0.0)) throw DataError("learning rate must be positive");
    if (epochs < 1 || batch_size < 1) throw DataError("epochs and batch_size must be >= 1");
    if (mode != TrainMode::Nominal && !(lipschitz_target > 0.0))
        throw DataError("lipschitz target must be positive in barrier modes");
}

void TrainConfig::set(const std::string& key, const std::string& value) {
    auto to_double = [&](const char* name) {
        try {
            return std::stod(value);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad number for ") + name + ": '" + value + "'", 0);
        }
    };
    auto to_int = [&](const char* name) {
        try {
            return std::stoi(value);
        } catch (const std::exception&) {
            throw ParseError(std::string("bad integer for ") + name + ": '" + value + "'", 0);
        }
    };

    if (key == "dims") {
        dims.clear();
        std::stringstream ss(value);
        std::string field;
        while (std::getline(ss, field, ',')) dims.push_back(std::stoi(field));
    } else if (key == "activation") {
        activation = Activation::parse(value);
    } else if (key == "loss") {
        loss = parse_loss(value);
    } else if (key == "mode") {
        mode = parse_train_mode(value);
    } else if (key == "lipschitz") {
        lipschitz_target = to_double("lipschitz");
    } else if (key == "rho0") {
        rho0 = to_double("rho0");
    } else if (key == "rho_decay") {
        rho_decay = to_double("rho_decay");
    } else if (key == "rho_period") {
        rho_period = to_int("rho_period");
    } else if (key == "lr") {
        adam.lr = to_double("lr");
    } else if (key == "beta1") {
        adam.beta1 = to_double("beta1");
    } else if (key == "beta2") {
        adam.beta2 = to_double("beta2");
    } else if (key == "eps") {
        adam.eps = to_double("eps");
    } else if (key == "epochs") {
        epochs = to_int("epochs");
    } else if (key == "batch_size") {
        batch_size = to_int("batch_size");
    } else if (key == "seed") {
        seed = std::stoull(value);
    } else if (key == "margin") {
        margin = to_double("margin");
    } else if (key == "lambda_init") {
        lambda_init = to_double("lambda_init");
    } else if (key == "test_fraction") {
        test_fraction = to_double("test_fraction");
    } else {
        throw ParseError("unknown config key '" + key + "'", 0);
    }
}

TrainConfig TrainConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config '" + path + "'");
    TrainConfig cfg;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", line_no);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        try {
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (ParseError& e) {
            throw ParseError(e.what(), line_no);
        }
    }
    return cfg;
}

void RunMetrics::write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    char buf[32];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    out << "epoch,task_loss,barrier_value,rho,accuracy,feasible\n";
    for (const auto& row : epochs)
        out << row.epoch << "," << num(row.task_loss) << "," << num(row.barrier_value) << ","
            << num(row.rho) << "," << num(row.accuracy) << "," << (row.feasible ? 1 : 0)
            << "\n";
    out << "# rho0," << num(rho0_resolved) << "\n";
    out << "# final_certified_full," << num(final_certified_full) << "\n";
    out << "# final_certified_scalar," << num(final_certified_scalar) << "\n";
    out << "# final_certified_split," << num(final_certified_split) << "\n";
    out << "# test_accuracy," << num(test_accuracy) << "\n";
}

double accuracy(const MlpParams& p, const Dataset& data,
                const std::vector<std::size_t>& indices) {
    if (indices.empty() || !data.labeled()) return 0.0;
    std::size_t hits = 0;
    for (std::size_t i : indices) {
        Index arg = 0;
        forward(p, data.inputs[i]).maxCoeff(&arg);
        if (int(arg) == data.labels[i]) ++hits;
    }
    return double(hits) / double(indices.size());
}

namespace {

std::vector<Sample> gather_batch(const Dataset& data, const std::vector<std::size_t>& order,
                                 std::size_t begin, std::size_t end) {
    std::vector<Sample> batch;
    batch.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
        const std::size_t s = order[i];
        Sample sample;
        sample.input = data.inputs[s];
        if (data.labeled())
            sample.label = data.labels[s];
        else
            sample.target = data.targets[s];
        batch.push_back(std::move(sample));
    }
    return batch;
}

}  // namespace

TrainOutput train(const TrainConfig& config, const Dataset& data) {
    config.validate();
    if (data.size() == 0) throw DataError("empty dataset");
    if (data.input_dim() != config.dims.front())
        throw DimensionError("dataset dimension " + std::to_string(data.input_dim()) +
                             " does not match dims[0]=" + std::to_string(config.dims.front()));

    Dataset working = data;
    if (working.test_indices().empty() && config.test_fraction > 0.0)
        split_train_test(working, config.test_fraction, config.seed);
    const auto train_idx = working.train_indices();
    const auto test_idx = working.test_indices();
    if (train_idx.empty()) throw DataError("no training samples");

    const bool barrier = config.mode != TrainMode::Nominal;
    const MultiplierMode mmode = config.mode == TrainMode::BarrierBilinear
                                     ? MultiplierMode::Bilinear
                                     : MultiplierMode::Linear;
    const LipschitzTarget target{config.lipschitz_target};

    MlpParams params = glorot_init(config.dims, config.activation, config.seed);
    Multipliers mult = Multipliers::constant(params, config.lambda_init);
    if (barrier) params = feasible_init(params, mult, target, config.margin);

    const auto t_start = std::chrono::steady_clock::now();

    // Resolve the barrier weight from the initial task loss scale.
    const auto full_batch = gather_batch(working, train_idx, 0, train_idx.size());
    double rho = config.rho0;
    if (barrier && rho <= 0.0) {
        const double initial_loss =
            loss_and_grad(params, full_batch, config.loss).value;
        rho = 1e-3 * std::max(std::abs(initial_loss), 1e-6);
    }

    RunMetrics metrics;
    metrics.rho0_resolved = barrier ? rho : 0.0;

    AdamState adam_state;
    StepConfig step_cfg;
    step_cfg.adam = config.adam;
    step_cfg.mode = mmode;
    step_cfg.margin = config.margin;

    std::mt19937_64 shuffle_rng(config.seed ^ 0xd1b54a32d192ed03ULL);
    std::vector<std::size_t> order = train_idx;

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        const auto t_epoch = std::chrono::steady_clock::now();
        std::shuffle(order.begin(), order.end(), shuffle_rng);

        double loss_sum = 0.0;
        std::size_t steps = 0;
        for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
            const std::size_t end = std::min(order.size(), begin + config.batch_size);
            const auto batch = gather_batch(working, order, begin, end);
            const LossResult task = loss_and_grad(params, batch, config.loss);
            loss_sum += task.value;
            ++steps;

            if (barrier) {
                const BarrierEval be = barrier_loss_and_grads(params, mult, target, rho);
                StepResult step =
                    constrained_step(params, mult, target, task.grads, be, adam_state, step_cfg);
                params = std::move(step.params);
                mult = std::move(step.multipliers);
            } else {
                const Vector x0 = flatten(params);
                const Vector g = flatten_grads(params, task.grads);
                const Vector x1 = adam_step(adam_state, x0, g, config.adam);
                unflatten(x1, params);
            }
        }

        EpochRow row;
        row.epoch = epoch;
        row.task_loss = loss_sum / double(std::max<std::size_t>(steps, 1));
        row.rho = barrier ? rho : 0.0;
        row.feasible = !barrier || is_feasible(params, mult, target, config.margin);
        row.barrier_value =
            row.feasible && barrier
                ? barrier_loss_and_grads(params, mult, target, rho).value
                : 0.0;
        row.accuracy = accuracy(params, working, test_idx.empty() ? train_idx : test_idx);
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_epoch).count();
        metrics.epochs.push_back(row);

        if (barrier && (epoch + 1) % config.rho_period == 0) rho *= config.rho_decay;
    }

    metrics.test_accuracy =
        accuracy(params, working, test_idx.empty() ? train_idx : test_idx);
    {
        EstimateOptions opts;
        opts.tol = 1e-3;
        opts.warm_start = barrier ? &mult : nullptr;
        opts.mode = CertMode::FullDiag;
        metrics.final_certified_full = estimate_lipschitz_detailed(params, opts).bound;
        opts.mode = CertMode::ScalarLambda;
        metrics.final_certified_scalar = estimate_lipschitz_detailed(params, opts).bound;
        opts.mode = CertMode::Split;
        metrics.final_certified_split = estimate_lipschitz_detailed(params, opts).bound;
    }
    metrics.total_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    return {std::move(params), std::move(mult), std::move(metrics)};
}

}  // namespace lipnn
