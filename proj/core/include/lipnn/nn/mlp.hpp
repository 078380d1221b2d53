#ifndef LIPNN_NN_MLP_HPP
#define LIPNN_NN_MLP_HPP

#include <cstdint>
#include <vector>

#include "lipnn/nn/activation.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

/// Feedforward network with l >= 1 hidden layers:
///   w^0 = x,  w^i = phi(W_{i-1} w^{i-1} + b_{i-1}),  f(x) = W_l w^l + b_l.
struct MlpParams {
    std::vector<Index> dims;      // (n_0, ..., n_{l+1})
    std::vector<Matrix> weights;  // W_i: dims[i+1] x dims[i], i = 0..l
    std::vector<Vector> biases;   // b_i: dims[i+1]
    Activation activation;

    Index num_hidden() const { return static_cast<Index>(dims.size()) - 2; }  // l
    Index input_dim() const { return dims.front(); }
    Index output_dim() const { return dims.back(); }

    void validate() const;
};

MlpParams zero_init(std::vector<Index> dims, Activation act = {});
MlpParams glorot_init(std::vector<Index> dims, Activation act, std::uint64_t seed);

/// All intermediate values of one forward pass, kept for backpropagation.
struct ForwardTrace {
    std::vector<Vector> pre;   // v^1 .. v^l and the affine output v^{l+1}
    std::vector<Vector> post;  // w^0 = x, w^1 .. w^l
    const Vector& output() const { return pre.back(); }
};

Vector forward(const MlpParams& p, const Vector& x);
ForwardTrace forward_trace(const MlpParams& p, const Vector& x);

struct MlpGrads {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
};

MlpGrads zero_grads(const MlpParams& p);

/// Reverse accumulation from an output cotangent. Adds the parameter
/// gradients into `acc` and returns the input cotangent dL/dx.
Vector backward(const MlpParams& p, const ForwardTrace& t, const Vector& out_grad,
                MlpGrads& acc);

/// Gradient of a scalar-output network with respect to its input.
Vector input_gradient(const MlpParams& p, const Vector& x);

}  // namespace lipnn

#endif
