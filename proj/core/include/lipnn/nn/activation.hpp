#ifndef LIPNN_NN_ACTIVATION_HPP
#define LIPNN_NN_ACTIVATION_HPP

#include <string>
#include <utility>

namespace lipnn {

enum class ActivationKind { Tanh, Relu, LeakyRelu, Sigmoid };

/// Scalar activation applied elementwise at the hidden layers. All supported
/// kinds are globally slope-restricted; `slope_range` returns the bounds
/// (alpha, beta) on the difference quotients.
struct Activation {
    ActivationKind kind = ActivationKind::Tanh;
    double leak = 0.01;  // slope of leaky_relu on the negative axis, 0 < leak < 1

    double operator()(double v) const;
    /// First derivative. relu at 0 evaluates to 0, leaky_relu at 0 to `leak`.
    double derivative(double v) const;
    /// Second derivative, used by double backprop. Zero a.e. for (leaky) relu.
    double second_derivative(double v) const;

    std::pair<double, double> slope_range() const;

    std::string name() const;
    static Activation parse(const std::string& text);
};

std::pair<double, double> slope_range(const Activation& a);

}  // namespace lipnn

#endif
