// SPDX-License-Identifier: Apache-2.0
//
// Shared dense-type aliases. Everything numeric is double precision; the
// geometry kernels are additionally templated on scalar for tests that want
// extended precision.

#pragma once

#include <Eigen/Dense>

namespace rdlm {

using Index = Eigen::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

template <class Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using MatX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace rdlm
