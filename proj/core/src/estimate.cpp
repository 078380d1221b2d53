#include "lipnn/certify/estimate.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lipnn/errors.hpp"
#include "lipnn/linalg/eigs.hpp"
#include "lipnn/lipschitz/cert_matrix.hpp"

namespace lipnn {

namespace {

struct InnerResult {
    bool certified = false;
    double best_eig = 0.0;
    Multipliers lambda;
};

std::vector<Index> block_offsets(const MlpParams& p) {
    std::vector<Index> off(p.dims.size() + 1, 0);
    for (std::size_t i = 0; i < p.dims.size(); ++i) off[i + 1] = off[i] + p.dims[i];
    return off;
}

// lambda_i = prod_{j>i} sigma_j^2 certifies the norm product bound itself
// (the scaling that makes the layerwise Schur cascade go through), which
// makes it a reliable ascent start when the layer norms are imbalanced.
Multipliers cascade_multipliers(const MlpParams& p) {
    Multipliers m = Multipliers::constant(p, 1.0);
    const Index l = p.num_hidden();
    std::vector<double> sigma;
    sigma.reserve(l + 1);
    for (const auto& W : p.weights) sigma.push_back(spectral_norm(W, 1e-9).value);
    double prod = 1.0;
    for (Index i = l; i >= 1; --i) {
        prod *= sigma[i] * sigma[i];
        m.lambdas[i - 1].setConstant(std::max(prod, kLambdaFloor));
    }
    return m;
}

// Maximize min_eig(M(p, lambda, L)) over the full multiplier diagonal by
// projected subgradient ascent, started from the best of the given
// candidates. The subgradient at the smallest eigenpair (e, u) is
// d e / d lambda^i_j = 2 u_i(j)^2 - 2 u_i(j) (W_{i-1} u_{i-1})(j).
InnerResult ascend_full_diag(const MlpParams& p, double L,
                             const std::vector<Multipliers>& starts, int iters) {
    const Index l = p.num_hidden();
    const auto off = block_offsets(p);

    Multipliers m = starts.front();
    double start_eig = -std::numeric_limits<double>::infinity();
    for (const Multipliers& cand : starts) {
        Multipliers c = cand;
        c.clamp_to_floor();
        const double eig = min_eigenpair(assemble_cert_matrix(p, c, {L})).first;
        if (eig >= 0.0) return {true, eig, c};
        if (eig > start_eig) {
            start_eig = eig;
            m = c;
        }
    }

    InnerResult best;
    best.best_eig = start_eig;
    best.lambda = m;
    int stale = 0;
    Vector prev_u;

    for (int it = 0; it < iters; ++it) {
        const BlockTridiagonalSymmetric M = assemble_cert_matrix(p, m, {L});
        const auto [eig, u] = min_eigenpair(M, prev_u.size() > 0 ? &prev_u : nullptr);
        prev_u = u;
        if (eig >= 0.0) return {true, eig, m};
        if (eig > best.best_eig + 1e-12 + 1e-10 * std::abs(best.best_eig)) {
            best.best_eig = eig;
            best.lambda = m;
            stale = 0;
        } else if (++stale > 30) {
            break;  // ascent stalled well below zero
        }

        const double step = 1.0 / double(it + 10);
        for (Index i = 1; i <= l; ++i) {
            const auto ui = u.segment(off[i], p.dims[i]);
            const Vector wu = p.weights[i - 1] * u.segment(off[i - 1], p.dims[i - 1]);
            Vector g = 2.0 * ui.cwiseProduct(ui - wu);
            m.lambdas[i - 1] = (m.lambdas[i - 1] + step * g).cwiseMax(kLambdaFloor);
        }
    }
    return best;
}

// Golden-section search over a scalar multiplier lambda*I on a log scale.
// min_eig is concave in lambda, hence unimodal in log lambda.
InnerResult ascend_scalar(const MlpParams& p, double L, int iters) {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(1e-6), b = std::log(1e6);

    auto eval = [&](double t) {
        Multipliers m = Multipliers::constant(p, std::exp(t));
        return min_eigenpair(assemble_cert_matrix(p, m, {L})).first;
    };

    double x1 = b - golden * (b - a);
    double x2 = a + golden * (b - a);
    double f1 = eval(x1);
    double f2 = eval(x2);
    double best_t = f1 >= f2 ? x1 : x2;
    double best_f = std::max(f1, f2);

    for (int it = 0; it < iters && best_f < 0.0 && (b - a) > 1e-10; ++it) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = eval(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = eval(x2);
        }
        if (f1 > best_f) best_f = f1, best_t = x1;
        if (f2 > best_f) best_f = f2, best_t = x2;
    }
    return {best_f >= 0.0, best_f, Multipliers::constant(p, std::exp(best_t))};
}

InnerResult inner_certify(const MlpParams& p, double L, CertMode mode,
                          const std::vector<Multipliers>& starts, int iters) {
    if (mode == CertMode::ScalarLambda) return ascend_scalar(p, L, 80);
    // The scalar search is a restriction of the full diagonal, so its result
    // is a valid fallback whenever the ascent stalls; this keeps the full
    // mode at least as tight as the scalar mode.
    InnerResult full = ascend_full_diag(p, L, starts, iters);
    if (full.certified) return full;
    InnerResult scalar = ascend_scalar(p, L, 80);
    if (scalar.certified || scalar.best_eig > full.best_eig) return scalar;
    return full;
}

LipschitzEstimate estimate_bisect(const MlpParams& p, const EstimateOptions& opts) {
    LipschitzEstimate est;
    double hi = norm_product_bound(p);
    if (hi <= 0.0) {
        est.bound = 0.0;
        est.certificate = true;
        est.multipliers = Multipliers::constant(p, 1.0);
        return est;
    }

    const Multipliers cascade = cascade_multipliers(p);
    std::vector<Multipliers> starts;
    if (opts.warm_start) starts.push_back(*opts.warm_start);
    starts.push_back(Multipliers::constant(p, 1.0));
    starts.push_back(cascade);

    InnerResult top = inner_certify(p, hi, opts.mode, starts, opts.inner_iterations);
    if (!top.certified) {
        est.bound = hi;  // norm-product fallback, still a valid upper bound
        est.certificate = false;
        est.multipliers = starts.front();
        return est;
    }

    double lo = 0.0;
    Multipliers cert_m = top.lambda;
    for (int it = 0; it < 200 && (hi - lo) > opts.tol * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        InnerResult r = inner_certify(p, mid, opts.mode, {cert_m, cascade},
                                      opts.inner_iterations);
        if (r.certified) {
            hi = mid;
            cert_m = r.lambda;
        } else {
            lo = mid;
        }
    }
    est.bound = hi;
    est.certificate = true;
    est.multipliers = cert_m;
    return est;
}

LipschitzEstimate estimate_split(const MlpParams& p, const EstimateOptions& opts) {
    const std::size_t l = static_cast<std::size_t>(p.num_hidden());
    const std::size_t cut = (l + 1) / 2;  // split after hidden layer ceil(l/2)
    const double beta = p.activation.slope_range().second;

    EstimateOptions half_opts = opts;
    half_opts.mode = CertMode::ScalarLambda;
    half_opts.warm_start = nullptr;

    // First half ends at the cut activation, so its bound carries the factor
    // beta on top of the affine-output subnetwork bound.
    LipschitzEstimate h1;
    if (cut == 1) {
        h1.bound = spectral_norm(p.weights[0]).value;
        h1.certificate = true;
    } else {
        h1 = estimate_bisect(subnetwork(p, 0, cut), half_opts);
    }
    h1.bound *= beta;

    LipschitzEstimate h2;
    if (cut == l) {
        h2.bound = spectral_norm(p.weights[l]).value;
        h2.certificate = true;
    } else {
        h2 = estimate_bisect(subnetwork(p, cut, l + 1), half_opts);
    }

    LipschitzEstimate est;
    est.bound = h1.bound * h2.bound;
    est.certificate = h1.certificate && h2.certificate;
    return est;
}

}  // namespace

double norm_product_bound(const MlpParams& p) {
    p.validate();
    const double beta = p.activation.slope_range().second;
    double bound = std::pow(beta, double(p.num_hidden()));
    for (const auto& W : p.weights) bound *= spectral_norm(W, 1e-9).value;
    return bound;
}

MlpParams subnetwork(const MlpParams& p, std::size_t first_layer, std::size_t last_layer) {
    if (first_layer >= last_layer || last_layer > p.weights.size())
        throw ShapeMismatch("bad subnetwork layer range");
    MlpParams q;
    q.activation = p.activation;
    q.dims.assign(p.dims.begin() + first_layer, p.dims.begin() + last_layer + 1);
    q.weights.assign(p.weights.begin() + first_layer, p.weights.begin() + last_layer);
    q.biases.assign(p.biases.begin() + first_layer, p.biases.begin() + last_layer);
    q.validate();
    return q;
}

LipschitzEstimate estimate_lipschitz_detailed(const MlpParams& p,
                                              const EstimateOptions& opts) {
    p.validate();
    if (!(opts.tol > 0.0)) throw Error("estimate_lipschitz tolerance must be positive");
    if (opts.mode == CertMode::Split) return estimate_split(p, opts);
    return estimate_bisect(p, opts);
}

double estimate_lipschitz(const MlpParams& p, CertMode mode, double tol) {
    EstimateOptions opts;
    opts.mode = mode;
    opts.tol = tol;
    return estimate_lipschitz_detailed(p, opts).bound;
}

}  // namespace lipnn
