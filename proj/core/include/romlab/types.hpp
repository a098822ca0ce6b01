#pragma once

#include <Eigen/Core>

namespace romlab {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

}  // namespace romlab
