#ifndef LIPNN_TYPES_HPP
#define LIPNN_TYPES_HPP

#include <Eigen/Dense>

namespace lipnn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

}  // namespace lipnn

#endif
