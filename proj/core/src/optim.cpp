#include "lipnn/optim.hpp"

#include <cmath>

#include "lipnn/errors.hpp"

namespace lipnn {

Vector adam_step(AdamState& state, const Vector& params, const Vector& grads,
                 const AdamConfig& cfg) {
    if (params.size() != grads.size())
        throw ShapeMismatch("adam_step parameter/gradient size mismatch");
    if (state.m.size() != params.size()) state.reset(params.size());

    state.t += 1;
    state.m = cfg.beta1 * state.m + (1.0 - cfg.beta1) * grads;
    state.v = cfg.beta2 * state.v + (1.0 - cfg.beta2) * grads.cwiseProduct(grads);

    const double c1 = 1.0 - std::pow(cfg.beta1, double(state.t));
    const double c2 = 1.0 - std::pow(cfg.beta2, double(state.t));
    Vector denom = (state.v / c2).cwiseSqrt();
    denom.array() += cfg.eps;
    return params - cfg.lr * (state.m / c1).cwiseQuotient(denom);
}

Index flat_size(const MlpParams& p, bool with_multipliers) {
    Index n = 0;
    for (const auto& W : p.weights) n += W.size();
    for (const auto& b : p.biases) n += b.size();
    if (with_multipliers)
        for (std::size_t i = 1; i + 1 < p.dims.size(); ++i) n += p.dims[i];
    return n;
}

Vector flatten(const MlpParams& p, const Multipliers* m) {
    Vector x(flat_size(p, m != nullptr));
    Index off = 0;
    for (const auto& W : p.weights) {
        for (Index c = 0; c < W.cols(); ++c)
            for (Index r = 0; r < W.rows(); ++r) x(off++) = W(r, c);
    }
    for (const auto& b : p.biases) {
        x.segment(off, b.size()) = b;
        off += b.size();
    }
    if (m) {
        for (const auto& l : m->lambdas) {
            x.segment(off, l.size()) = l;
            off += l.size();
        }
    }
    return x;
}

Vector flatten_grads(const MlpParams& p, const MlpGrads& g,
                     const std::vector<Vector>* lambda_grads) {
    Vector x(flat_size(p, lambda_grads != nullptr));
    Index off = 0;
    for (const auto& W : g.weights) {
        for (Index c = 0; c < W.cols(); ++c)
            for (Index r = 0; r < W.rows(); ++r) x(off++) = W(r, c);
    }
    for (const auto& b : g.biases) {
        x.segment(off, b.size()) = b;
        off += b.size();
    }
    if (lambda_grads) {
        for (const auto& l : *lambda_grads) {
            x.segment(off, l.size()) = l;
            off += l.size();
        }
    }
    return x;
}

void unflatten(const Vector& x, MlpParams& p, Multipliers* m) {
    Index off = 0;
    for (auto& W : p.weights) {
        for (Index c = 0; c < W.cols(); ++c)
            for (Index r = 0; r < W.rows(); ++r) W(r, c) = x(off++);
    }
    for (auto& b : p.biases) {
        b = x.segment(off, b.size());
        off += b.size();
    }
    if (m) {
        for (auto& l : m->lambdas) {
            l = x.segment(off, l.size());
            off += l.size();
        }
    }
    if (off != x.size()) throw ShapeMismatch("unflatten length mismatch");
}

}  // namespace lipnn
