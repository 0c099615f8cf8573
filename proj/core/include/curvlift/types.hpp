#ifndef CURVLIFT_TYPES_HPP
#define CURVLIFT_TYPES_HPP

#include <Eigen/Dense>

namespace curvlift {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using VectorXd = Eigen::VectorXd;
using MatrixXd = Eigen::MatrixXd;
using PointList = Eigen::Matrix<double, Eigen::Dynamic, 2>;

}  // namespace curvlift

#endif
