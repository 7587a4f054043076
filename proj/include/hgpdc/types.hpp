#pragma once

#include <complex>

#include <Eigen/Dense>

namespace hgpdc {

using cdouble = std::complex<double>;
using CMatrix = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cdouble, Eigen::Dynamic, 1>;
using RVector = Eigen::VectorXd;

}  // namespace hgpdc
