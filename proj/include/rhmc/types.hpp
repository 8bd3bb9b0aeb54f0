#pragma once

#include <Eigen/Dense>

namespace rhmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

}  // namespace rhmc
