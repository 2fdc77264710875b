#pragma once

#include <Eigen/Core>

namespace dgswp {

using Scalar = double;
using Index = Eigen::Index;

// Dense types used throughout. Points are stored as row-major matrices
// (one point per row), flat parameter vectors and weights as column vectors.
using Vec = Eigen::VectorX<Scalar>;
using Mat = Eigen::MatrixX<Scalar>;
using RowVec = Eigen::RowVectorX<Scalar>;

using VecCRef = const Eigen::Ref<const Vec>&;
using MatCRef = const Eigen::Ref<const Mat>&;

}  // namespace dgswp
