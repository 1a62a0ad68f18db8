#pragma once

#include <Eigen/Dense>

namespace expinterp {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Number of singular values above rel_tol * sigma_max.
std::size_t numerical_rank(const CMatrix& a, double rel_tol);

/// Orthonormal basis (columns) of the numerical right null space.
CMatrix null_space(const CMatrix& a, double rel_tol);

}  // namespace expinterp
