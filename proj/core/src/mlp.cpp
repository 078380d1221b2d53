#include "lipnn/nn/mlp.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lipnn/errors.hpp"

namespace lipnn {

void MlpParams::validate() const {
    if (dims.size() < 3)
        throw ShapeMismatch("network needs at least one hidden layer");
    const std::size_t layers = dims.size() - 1;
    if (weights.size() != layers || biases.size() != layers)
        throw ShapeMismatch("expected " + std::to_string(layers) + " weight/bias pairs");
    for (std::size_t i = 0; i < layers; ++i) {
        if (weights[i].rows() != dims[i + 1] || weights[i].cols() != dims[i])
            throw ShapeMismatch("weight " + std::to_string(i) + " has shape " +
                                std::to_string(weights[i].rows()) + "x" +
                                std::to_string(weights[i].cols()));
        if (biases[i].size() != dims[i + 1])
            throw ShapeMismatch("bias " + std::to_string(i) + " has length " +
                                std::to_string(biases[i].size()));
    }
}

MlpParams zero_init(std::vector<Index> dims, Activation act) {
    MlpParams p;
    p.dims = std::move(dims);
    p.activation = act;
    for (std::size_t i = 0; i + 1 < p.dims.size(); ++i) {
        p.weights.emplace_back(Matrix::Zero(p.dims[i + 1], p.dims[i]));
        p.biases.emplace_back(Vector::Zero(p.dims[i + 1]));
    }
    p.validate();
    return p;
}

MlpParams glorot_init(std::vector<Index> dims, Activation act, std::uint64_t seed) {
    MlpParams p = zero_init(std::move(dims), act);
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
        const double bound = std::sqrt(6.0 / double(p.dims[i] + p.dims[i + 1]));
        std::uniform_real_distribution<double> uni(-bound, bound);
        Matrix& W = p.weights[i];
        for (Index r = 0; r < W.rows(); ++r)
            for (Index c = 0; c < W.cols(); ++c) W(r, c) = uni(rng);
    }
    return p;
}

Vector forward(const MlpParams& p, const Vector& x) {
    return forward_trace(p, x).output();
}

ForwardTrace forward_trace(const MlpParams& p, const Vector& x) {
    p.validate();
    if (x.size() != p.input_dim())
        throw ShapeMismatch("input length " + std::to_string(x.size()) +
                            ", network expects " + std::to_string(p.input_dim()));
    ForwardTrace t;
    t.post.push_back(x);
    const std::size_t layers = p.weights.size();
    for (std::size_t i = 0; i < layers; ++i) {
        Vector v = p.weights[i] * t.post.back() + p.biases[i];
        if (i + 1 < layers) {
            Vector w(v.size());
            for (Index j = 0; j < v.size(); ++j) w(j) = p.activation(v(j));
            t.pre.push_back(std::move(v));
            t.post.push_back(std::move(w));
        } else {
            t.pre.push_back(std::move(v));  // affine output layer
        }
    }
    return t;
}

MlpGrads zero_grads(const MlpParams& p) {
    MlpGrads g;
    for (std::size_t i = 0; i < p.weights.size(); ++i) {
        g.weights.emplace_back(Matrix::Zero(p.weights[i].rows(), p.weights[i].cols()));
        g.biases.emplace_back(Vector::Zero(p.biases[i].size()));
    }
    return g;
}

Vector backward(const MlpParams& p, const ForwardTrace& t, const Vector& out_grad,
                MlpGrads& acc) {
    const std::size_t layers = p.weights.size();
    Vector vbar = out_grad;  // cotangent at pre-activation of the current layer
    for (std::size_t i = layers; i-- > 0;) {
        acc.weights[i].noalias() += vbar * t.post[i].transpose();
        acc.biases[i] += vbar;
        Vector wbar = p.weights[i].transpose() * vbar;
        if (i == 0) return wbar;
        const Vector& v = t.pre[i - 1];
        vbar.resize(v.size());
        for (Index j = 0; j < v.size(); ++j)
            vbar(j) = wbar(j) * p.activation.derivative(v(j));
    }
    return Vector();
}

Vector input_gradient(const MlpParams& p, const Vector& x) {
    if (p.output_dim() != 1)
        throw ShapeMismatch("input_gradient expects a scalar-output network");
    ForwardTrace t = forward_trace(p, x);
    MlpGrads scratch = zero_grads(p);
    Vector one(1);
    one(0) = 1.0;
    return backward(p, t, one, scratch);
}

}  // namespace lipnn
