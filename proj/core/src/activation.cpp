#include "lipnn/nn/activation.hpp"

#include <cmath>
#include <cstdio>

#include "lipnn/errors.hpp"

namespace lipnn {

double Activation::operator()(double v) const {
    switch (kind) {
        case ActivationKind::Tanh: return std::tanh(v);
        case ActivationKind::Relu: return v > 0.0 ? v : 0.0;
        case ActivationKind::LeakyRelu: return v > 0.0 ? v : leak * v;
        case ActivationKind::Sigmoid: return 1.0 / (1.0 + std::exp(-v));
    }
    return 0.0;
}

double Activation::derivative(double v) const {
    switch (kind) {
        case ActivationKind::Tanh: {
            const double t = std::tanh(v);
            return 1.0 - t * t;
        }
        case ActivationKind::Relu: return v > 0.0 ? 1.0 : 0.0;
        case ActivationKind::LeakyRelu: return v > 0.0 ? 1.0 : leak;
        case ActivationKind::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-v));
            return s * (1.0 - s);
        }
    }
    return 0.0;
}

double Activation::second_derivative(double v) const {
    switch (kind) {
        case ActivationKind::Tanh: {
            const double t = std::tanh(v);
            return -2.0 * t * (1.0 - t * t);
        }
        case ActivationKind::Relu:
        case ActivationKind::LeakyRelu:
            return 0.0;
        case ActivationKind::Sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-v));
            return s * (1.0 - s) * (1.0 - 2.0 * s);
        }
    }
    return 0.0;
}

std::pair<double, double> Activation::slope_range() const {
    switch (kind) {
        case ActivationKind::Tanh: return {0.0, 1.0};
        case ActivationKind::Relu: return {0.0, 1.0};
        case ActivationKind::LeakyRelu: return {leak, 1.0};
        case ActivationKind::Sigmoid: return {0.0, 0.25};
    }
    return {0.0, 1.0};
}

std::string Activation::name() const {
    switch (kind) {
        case ActivationKind::Tanh: return "tanh";
        case ActivationKind::Relu: return "relu";
        case ActivationKind::LeakyRelu: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "leaky_relu(%.17g)", leak);
            return buf;
        }
        case ActivationKind::Sigmoid: return "sigmoid";
    }
    return "tanh";
}

Activation Activation::parse(const std::string& text) {
    if (text == "tanh") return {ActivationKind::Tanh};
    if (text == "relu") return {ActivationKind::Relu};
    if (text == "sigmoid") return {ActivationKind::Sigmoid};
    if (text.rfind("leaky_relu", 0) == 0) {
        double s = 0.01;
        if (text.size() > 10 && text[10] == '(') {
            if (std::sscanf(text.c_str() + 10, "(%lg)", &s) != 1)
                throw ParseError("bad leaky_relu slope in '" + text + "'", 0);
        }
        if (!(s > 0.0 && s < 1.0))
            throw ParseError("leaky_relu slope must lie in (0,1)", 0);
        return {ActivationKind::LeakyRelu, s};
    }
    throw ParseError("unknown activation '" + text + "'", 0);
}

std::pair<double, double> slope_range(const Activation& a) { return a.slope_range(); }

}  // namespace lipnn
