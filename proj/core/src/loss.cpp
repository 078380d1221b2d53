#include "lipnn/nn/loss.hpp"

#include <cmath>
#include <string>

#include "lipnn/errors.hpp"

namespace lipnn {

// The batch is evaluated as one matrix per layer (samples in columns); the
// gradient accumulation then runs on matrix products instead of per-sample
// rank-1 updates. Results equal the per-sample recursion up to roundoff.
LossResult loss_and_grad(const MlpParams& p, std::span<const Sample> batch, LossKind kind) {
    if (batch.empty()) throw DataError("loss_and_grad on an empty batch");
    p.validate();

    const Index n = static_cast<Index>(batch.size());
    const std::size_t layers = p.weights.size();
    const double inv_n = 1.0 / double(n);

    Matrix X(p.input_dim(), n);
    for (Index s = 0; s < n; ++s) {
        if (batch[s].input.size() != p.input_dim())
            throw ShapeMismatch("batch input length mismatch");
        X.col(s) = batch[s].input;
    }

    std::vector<Matrix> post{std::move(X)};  // w^0 .. w^l
    std::vector<Matrix> pre;                 // v^1 .. v^{l+1}
    for (std::size_t i = 0; i < layers; ++i) {
        Matrix v = (p.weights[i] * post.back()).colwise() + p.biases[i];
        if (i + 1 < layers) {
            Matrix w = v.unaryExpr([&](double value) { return p.activation(value); });
            pre.push_back(std::move(v));
            post.push_back(std::move(w));
        } else {
            pre.push_back(std::move(v));
        }
    }
    const Matrix& out = pre.back();

    LossResult res;
    res.grads = zero_grads(p);
    Matrix out_grad(out.rows(), out.cols());

    switch (kind) {
        case LossKind::CrossEntropy: {
            for (Index s = 0; s < n; ++s) {
                const int label = batch[s].label;
                if (label < 0 || label >= out.rows())
                    throw InvalidLabel("label " + std::to_string(label) + " outside [0, " +
                                       std::to_string(out.rows()) + ")");
                const Vector z = out.col(s);
                Vector e = (z.array() - z.maxCoeff()).exp();
                Vector prob = e / e.sum();
                res.value -= inv_n * std::log(std::max(prob(label), 1e-300));
                out_grad.col(s) = prob * inv_n;
                out_grad(label, s) -= inv_n;
            }
            break;
        }
        case LossKind::MeanSquaredError: {
            for (Index s = 0; s < n; ++s) {
                if (batch[s].target.size() != out.rows())
                    throw ShapeMismatch("MSE target length mismatch");
                const Vector diff = out.col(s) - batch[s].target;
                res.value += inv_n * diff.squaredNorm();
                out_grad.col(s) = 2.0 * inv_n * diff;
            }
            break;
        }
        case LossKind::WassersteinCritic: {
            if (out.rows() != 1)
                throw ShapeMismatch("wasserstein_critic expects scalar outputs");
            for (Index s = 0; s < n; ++s) {
                if (batch[s].target.size() < 1)
                    throw ShapeMismatch("wasserstein_critic sample needs a sign target");
                const double sign = batch[s].target(0);
                res.value += inv_n * (-sign) * out(0, s);
                out_grad(0, s) = -sign * inv_n;
            }
            break;
        }
    }

    Matrix vbar = std::move(out_grad);
    for (std::size_t i = layers; i-- > 0;) {
        res.grads.weights[i].noalias() = vbar * post[i].transpose();
        res.grads.biases[i] = vbar.rowwise().sum();
        if (i == 0) break;
        Matrix wbar = p.weights[i].transpose() * vbar;
        const Matrix& v = pre[i - 1];
        vbar.resize(v.rows(), v.cols());
        for (Index c = 0; c < v.cols(); ++c)
            for (Index r = 0; r < v.rows(); ++r)
                vbar(r, c) = wbar(r, c) * p.activation.derivative(v(r, c));
    }
    return res;
}

LossKind parse_loss(const std::string& text) {
    if (text == "cross_entropy") return LossKind::CrossEntropy;
    if (text == "mse" || text == "mean_squared_error") return LossKind::MeanSquaredError;
    if (text == "wasserstein" || text == "wasserstein_critic") return LossKind::WassersteinCritic;
    throw ParseError("unknown loss '" + text + "'", 0);
}

std::string loss_name(LossKind kind) {
    switch (kind) {
        case LossKind::CrossEntropy: return "cross_entropy";
        case LossKind::MeanSquaredError: return "mean_squared_error";
        case LossKind::WassersteinCritic: return "wasserstein_critic";
    }
    return "cross_entropy";
}

}  // namespace lipnn
