#pragma once

#include <Eigen/Dense>

namespace mgsda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

} // namespace mgsda
