// lipnn command line tool: train, certify, bench, gen-2d, wgan.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <random>

#include "lipnn/certify/estimate.hpp"
#include "lipnn/errors.hpp"
#include "lipnn/train/bench.hpp"
#include "lipnn/train/idx.hpp"
#include "lipnn/train/model_io.hpp"
#include "lipnn/train/trainer.hpp"
#include "lipnn/wgan/wgan.hpp"

namespace {

using namespace lipnn;

struct TrainCli {
    std::string config_path, data_path, test_data_path;
    std::string mode, out_path, metrics_path;
    std::string idx_images, idx_labels, idx_test_images, idx_test_labels;
    int idx_size = 14;
    int idx_limit = 0;
    std::optional<double> lipschitz;
    std::optional<std::uint64_t> seed;
    std::optional<int> epochs;
    std::optional<double> lr;
    std::optional<int> batch_size;
    std::string dims;
};

int run_train(const TrainCli& cli) {
    TrainConfig cfg;
    if (!cli.config_path.empty()) cfg = TrainConfig::from_file(cli.config_path);
    if (!cli.dims.empty()) cfg.set("dims", cli.dims);
    if (!cli.mode.empty()) cfg.mode = parse_train_mode(cli.mode);
    if (cli.lipschitz) cfg.lipschitz_target = *cli.lipschitz;
    if (cli.seed) cfg.seed = *cli.seed;
    if (cli.epochs) cfg.epochs = *cli.epochs;
    if (cli.lr) cfg.adam.lr = *cli.lr;
    if (cli.batch_size) cfg.batch_size = *cli.batch_size;

    Dataset data;
    if (!cli.idx_images.empty()) {
        data = load_idx(cli.idx_images, cli.idx_labels, cli.idx_size, cli.idx_size);
        if (cli.idx_limit > 0 && data.size() > std::size_t(cli.idx_limit)) {
            data.inputs.resize(cli.idx_limit);
            data.labels.resize(cli.idx_limit);
            data.is_test.resize(cli.idx_limit);
        }
        if (!cli.idx_test_images.empty()) {
            Dataset test =
                load_idx(cli.idx_test_images, cli.idx_test_labels, cli.idx_size, cli.idx_size);
            for (std::size_t i = 0; i < test.size(); ++i) {
                data.inputs.push_back(test.inputs[i]);
                data.labels.push_back(test.labels[i]);
                data.is_test.push_back(1);
            }
            cfg.test_fraction = 0.0;
        }
    } else {
        data = load_csv(cli.data_path);
        if (!cli.test_data_path.empty()) {
            Dataset test = load_csv(cli.test_data_path);
            for (std::size_t i = 0; i < test.size(); ++i) {
                data.inputs.push_back(test.inputs[i]);
                data.labels.push_back(test.labels[i]);
                data.is_test.push_back(1);
            }
            cfg.test_fraction = 0.0;
        }
    }

    const TrainOutput out = train(cfg, data);
    if (!cli.metrics_path.empty()) out.metrics.write_csv(cli.metrics_path);
    if (!cli.out_path.empty()) {
        ModelMeta meta;
        meta.lipschitz_target = cfg.lipschitz_target;
        meta.mode = train_mode_name(cfg.mode);
        save_model(cli.out_path, out.params, out.multipliers, meta);
    }
    std::printf("mode=%s test_accuracy=%.4f certified_full=%.6g certified_scalar=%.6g "
                "certified_split=%.6g wall_seconds=%.2f\n",
                train_mode_name(cfg.mode).c_str(), out.metrics.test_accuracy,
                out.metrics.final_certified_full, out.metrics.final_certified_scalar,
                out.metrics.final_certified_split, out.metrics.total_seconds);
    return 0;
}

int run_certify(const std::string& model_path, const std::string& mode, double tol) {
    const LoadedModel model = load_model(model_path);
    CertMode cert_mode;
    if (mode == "full")
        cert_mode = CertMode::FullDiag;
    else if (mode == "scalar")
        cert_mode = CertMode::ScalarLambda;
    else if (mode == "split")
        cert_mode = CertMode::Split;
    else
        throw ParseError("certify mode must be full, scalar or split", 0);

    EstimateOptions opts;
    opts.mode = cert_mode;
    opts.tol = tol;
    if (!model.multipliers.lambdas.empty()) opts.warm_start = &model.multipliers;
    const LipschitzEstimate est = estimate_lipschitz_detailed(model.params, opts);
    std::printf("bound=%.9g mode=%s certificate=%s\n", est.bound, mode.c_str(),
                est.certificate ? "yes" : "norm-product-fallback");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lipschitz-bounded neural network training and certification"};
    app.require_subcommand(1);

    TrainCli tr;
    CLI::App* train_cmd = app.add_subcommand("train", "Train a network");
    train_cmd->add_option("--config", tr.config_path, "key=value config file");
    train_cmd->add_option("--data", tr.data_path, "training CSV");
    train_cmd->add_option("--test-data", tr.test_data_path, "test CSV");
    train_cmd->add_option("--mode", tr.mode, "nominal|barrier-linear|barrier-bilinear");
    train_cmd->add_option("--lipschitz", tr.lipschitz, "Lipschitz target L");
    train_cmd->add_option("--out", tr.out_path, "model output path");
    train_cmd->add_option("--metrics", tr.metrics_path, "metrics CSV output path");
    train_cmd->add_option("--seed", tr.seed, "RNG seed");
    train_cmd->add_option("--epochs", tr.epochs, "epoch count");
    train_cmd->add_option("--lr", tr.lr, "Adam learning rate");
    train_cmd->add_option("--batch-size", tr.batch_size, "batch size");
    train_cmd->add_option("--dims", tr.dims, "layer widths, e.g. 2,10,10,3");
    train_cmd->add_option("--idx-images", tr.idx_images, "IDX image file (MNIST style)");
    train_cmd->add_option("--idx-labels", tr.idx_labels, "IDX label file");
    train_cmd->add_option("--idx-test-images", tr.idx_test_images, "IDX test image file");
    train_cmd->add_option("--idx-test-labels", tr.idx_test_labels, "IDX test label file");
    train_cmd->add_option("--idx-size", tr.idx_size, "downsampled image side length");
    train_cmd->add_option("--idx-limit", tr.idx_limit, "cap on training samples");

    std::string certify_model, certify_mode = "full";
    double certify_tol = 1e-3;
    CLI::App* certify_cmd = app.add_subcommand("certify", "Certify a trained model");
    certify_cmd->add_option("--model", certify_model, "model file")->required();
    certify_cmd->add_option("--mode", certify_mode, "full|scalar|split");
    certify_cmd->add_option("--tol", certify_tol, "relative bisection tolerance");

    std::string bench_sizes = "2x8,4x16,10x64";
    std::string bench_out;
    int bench_reps = 20;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Blocked vs dense barrier timing");
    bench_cmd->add_option("--sizes", bench_sizes, "comma list of DxW sizes");
    bench_cmd->add_option("--reps", bench_reps, "repetitions per size");
    bench_cmd->add_option("--out", bench_out, "CSV output path");

    std::string gen_out = "blobs2d.csv";
    int gen_points = 300;
    std::uint64_t gen_seed = 7;
    CLI::App* gen_cmd = app.add_subcommand("gen-2d", "Emit the synthetic 3-class dataset");
    gen_cmd->add_option("--out", gen_out, "CSV output path");
    gen_cmd->add_option("--points", gen_points, "sample count");
    gen_cmd->add_option("--seed", gen_seed, "RNG seed");

    GanConfig gan;
    std::string gan_method = "barrier", gan_metrics, gan_samples;
    int gan_points = 512;
    CLI::App* wgan_cmd = app.add_subcommand("wgan", "Toy Wasserstein GAN training");
    wgan_cmd->add_option("--method", gan_method, "barrier|clip|gp");
    wgan_cmd->add_option("--epochs", gan.epochs, "epoch count");
    wgan_cmd->add_option("--seed", gan.seed, "RNG seed");
    wgan_cmd->add_option("--out-metrics", gan_metrics, "metrics CSV output path");
    wgan_cmd->add_option("--out-samples", gan_samples, "generated point cloud CSV");
    wgan_cmd->add_option("--batch-size", gan.batch_size, "batch size");
    wgan_cmd->add_option("--critic-steps", gan.critic_steps, "critic steps per generator step");
    wgan_cmd->add_option("--clip", gan.clip, "weight clipping bound c");
    wgan_cmd->add_option("--penalty", gan.penalty, "gradient penalty weight");
    wgan_cmd->add_option("--points", gan_points, "dataset size");
    wgan_cmd->add_option("--modes", gan.ring_modes, "mixture modes");
    wgan_cmd->add_option("--radius", gan.ring_radius, "ring radius");
    wgan_cmd->add_option("--sigma", gan.ring_sigma, "mode spread");

    try {
        app.parse(argc, argv);

        if (*train_cmd) return run_train(tr);
        if (*certify_cmd) return run_certify(certify_model, certify_mode, certify_tol);
        if (*bench_cmd) {
            const auto rows = bench_barrier(parse_bench_sizes(bench_sizes), bench_reps);
            for (const auto& r : rows)
                std::printf("depth=%d width=%d blocked_ms=%.4f dense_ms=%.4f speedup=%.2f "
                            "max_diff=%.3g\n",
                            r.depth, r.width, r.blocked_ms, r.dense_ms, r.speedup, r.max_diff);
            if (!bench_out.empty()) write_bench_csv(bench_out, rows);
            return 0;
        }
        if (*gen_cmd) {
            save_csv(gen_out, make_blobs_2d(gen_points, gen_seed));
            std::printf("wrote %s\n", gen_out.c_str());
            return 0;
        }
        if (*wgan_cmd) {
            gan.method = parse_gan_method(gan_method);
            const Dataset data = sample_ring(gan_points, gan.ring_modes, gan.ring_radius,
                                             gan.ring_sigma, gan.seed ^ 0x5a5a5a5aULL);
            GanOutput out = wgan_train(gan, data);
            out.metrics.samples_path = gan_samples;
            if (!gan_metrics.empty()) out.metrics.write_csv(gan_metrics);
            if (!gan_samples.empty()) {
                std::mt19937_64 rng(gan.seed + 1);
                std::normal_distribution<double> normal(0.0, 1.0);
                std::vector<Vector> samples;
                for (int i = 0; i < 500; ++i) {
                    Vector z(out.generator.input_dim());
                    for (Index j = 0; j < z.size(); ++j) z(j) = normal(rng);
                    samples.push_back(forward(out.generator, z));
                }
                write_samples_csv(gan_samples, samples);
            }
            const auto& last = out.metrics.epochs.back();
            std::printf("method=%s wasserstein=%.4f disc_bound=%.6g mode_coverage=%.3f "
                        "feasible=%s wall_seconds=%.2f\n",
                        gan_method.c_str(), last.wasserstein, last.disc_bound,
                        out.metrics.mode_coverage, out.metrics.always_feasible ? "yes" : "no",
                        out.metrics.total_seconds);
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 3;
    } catch (const InitFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what();
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        std::cerr << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
