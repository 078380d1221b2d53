#ifndef LIPNN_CERTIFY_ESTIMATE_HPP
#define LIPNN_CERTIFY_ESTIMATE_HPP

#include "lipnn/certify/qc.hpp"

namespace lipnn {

/// beta^l * prod_i ||W_i||_2: the layerwise norm product. Always a valid
/// Lipschitz bound and the bracket for the bisection below.
double norm_product_bound(const MlpParams& p);

struct EstimateOptions {
    CertMode mode = CertMode::FullDiag;
    double tol = 1e-3;           // relative bisection width
    int inner_iterations = 500;  // projected-ascent budget per probe
    const Multipliers* warm_start = nullptr;
};

struct LipschitzEstimate {
    double bound = 0.0;
    bool certificate = false;  // false when the norm-product fallback was returned
    Multipliers multipliers;   // certifying multipliers when certificate is true
};

/// Conservative Lipschitz upper bound by bisection over L. Each probe
/// maximizes the smallest eigenvalue of the certificate matrix over the
/// multipliers — projected gradient ascent over the full diagonal, or a
/// golden section search over one scalar on a log scale. Split mode cuts the
/// network after layer ceil(l/2), bounds both halves (scalar inner solver)
/// and multiplies. Never fails: the norm product is the fallback.
LipschitzEstimate estimate_lipschitz_detailed(const MlpParams& p,
                                              const EstimateOptions& opts);
double estimate_lipschitz(const MlpParams& p, CertMode mode, double tol = 1e-3);

/// Layers [first, last) of p as a standalone network; used by split mode.
MlpParams subnetwork(const MlpParams& p, std::size_t first_layer, std::size_t last_layer);

}  // namespace lipnn

#endif
