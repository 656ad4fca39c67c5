#pragma once

#include <Eigen/Dense>

namespace deckwalk {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Row2 = Eigen::RowVector2d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using RowX = Eigen::RowVectorXd;

/// Matrix exponential (Pade approximant with scaling and squaring).
MatX expm(const MatX& m);

}  // namespace deckwalk
