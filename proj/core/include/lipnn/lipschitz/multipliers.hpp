#ifndef LIPNN_LIPSCHITZ_MULTIPLIERS_HPP
#define LIPNN_LIPSCHITZ_MULTIPLIERS_HPP

#include <vector>

#include "lipnn/nn/mlp.hpp"
#include "lipnn/types.hpp"

namespace lipnn {

/// Entries of the multiplier diagonals stay at or above this floor during
/// training; the barrier needs 2*Lambda_i to remain invertible.
inline constexpr double kLambdaFloor = 1e-8;

/// Diagonals of the nonnegative multiplier matrices Lambda_1..Lambda_l, one
/// vector per hidden layer.
struct Multipliers {
    std::vector<Vector> lambdas;

    static Multipliers constant(const MlpParams& p, double value = 1.0);
    void validate(const MlpParams& p) const;
    void clamp_to_floor(double floor = kLambdaFloor);
};

struct LipschitzTarget {
    double L = 1.0;
};

/// linear: multipliers fixed before training; bilinear: multipliers are
/// decision variables alongside the weights.
enum class MultiplierMode { Linear, Bilinear };

}  // namespace lipnn

#endif
